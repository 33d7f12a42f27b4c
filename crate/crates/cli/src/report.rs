//! Plain-text and CSV rendering with fixed-width numeric formatting, so
//! outputs are stable enough for golden-file comparison.

use majdet_core::detectors::{ThresholdMethod, ThresholdPoint, Verdict};
use majdet_core::entropy::{EntropyMeasure, OrderDisplay};
use majdet_core::probvec::ProbVec;

/// Formats with 12 significant digits: fixed-point notation in the
/// moderate range, scientific outside it.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn fmt_vec(v: &ProbVec) -> String {
    let body: Vec<String> = v.entries().iter().map(|&x| fmt_sig(x)).collect();
    format!("[{}]", body.join(", "))
}

pub fn fmt_mu(mu: &[f64]) -> String {
    let body: Vec<String> = mu.iter().map(|&x| fmt_sig(x)).collect();
    format!("[{}]", body.join(", "))
}

pub fn verdict_lines(v: &Verdict) -> String {
    let mut out = String::new();
    out.push_str(&format!("observed: {}\n", fmt_vec(&v.observed)));
    out.push_str(&format!("bound: {}\n", fmt_vec(&v.bound)));
    if v.is_entangled() {
        out.push_str("verdict: Entangled\n");
        match v.violated_index {
            Some(index) => out.push_str(&format!(
                "violated at index {index}, margin {}\n",
                fmt_sig(v.margin)
            )),
            None => out.push_str(&format!("margin {}\n", fmt_sig(v.margin))),
        }
    } else {
        out.push_str("verdict: Inconclusive\n");
        out.push_str(&format!("margin {}\n", fmt_sig(v.margin)));
    }
    out
}

fn order_of(measure: &EntropyMeasure) -> String {
    match measure {
        EntropyMeasure::Shannon => "1".into(),
        EntropyMeasure::Tsallis { order } | EntropyMeasure::Renyi { order } => {
            format!("{}", OrderDisplay(*order))
        }
    }
}

/// CSV table `d,order,q_star,method` with LF line endings and the literal
/// `inf` for the infinite order.
pub fn scan_csv(points: &[ThresholdPoint]) -> String {
    let mut out = String::from("d,order,q_star,method\n");
    for p in points {
        let method = match p.method {
            ThresholdMethod::Analytic => "analytic",
            ThresholdMethod::Bisection => "bisection",
        };
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.d,
            order_of(&p.measure),
            fmt_sig(p.q_star),
            method
        ));
    }
    out
}
