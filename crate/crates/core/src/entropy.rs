//! Schur-concave scalar measures of disorder.
//!
//! Every measure here is monotone with respect to majorization: if `a ≺ b`
//! then the measure of `a` is at least the measure of `b`. Shannon and
//! Tsallis are trace-type (a sum of a concave function over the entries);
//! Rényi of order below one is quasi-entropic but not trace-type, and
//! Rényi above one is Schur-concave without being concave. Natural
//! logarithms are used throughout.

use crate::probvec::ProbVec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EntropyError {
    #[error("order must be positive, got {0}")]
    InvalidOrder(f64),
    #[error("unknown measure `{0}`; expected shannon, tsallis:<r>, tsallis:inf, or renyi:<r>")]
    Parse(alloc::string::String),
}

/// A Schur-concave disorder measure on probability vectors.
///
/// Order-1 Tsallis and Rényi coincide with Shannon and are resolved to it
/// by the constructors. The Tsallis order may be infinite: that limit has
/// no useful pointwise value (it degenerates to comparing largest entries)
/// so [`EntropyMeasure::eval`] is not defined there and detectors branch
/// to a max-entry criterion instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyMeasure {
    Shannon,
    Tsallis { order: f64 },
    Renyi { order: f64 },
}

/// Orders above this use compensated summation in `Σ λ^r` to limit
/// cancellation in `1 - Σ λ^r`.
const COMPENSATED_ORDER: f64 = 20.0;

impl EntropyMeasure {
    /// Tsallis entropy of the given order; order 1 resolves to Shannon and
    /// an infinite order is accepted as the distinguished max-entry limit.
    pub fn tsallis(order: f64) -> Result<Self, EntropyError> {
        if order.is_nan() || order <= 0.0 {
            return Err(EntropyError::InvalidOrder(order));
        }
        if order == 1.0 {
            Ok(Self::Shannon)
        } else {
            Ok(Self::Tsallis { order })
        }
    }

    /// Rényi entropy of the given finite order; order 1 resolves to
    /// Shannon.
    pub fn renyi(order: f64) -> Result<Self, EntropyError> {
        if order.is_nan() || order <= 0.0 || order.is_infinite() {
            return Err(EntropyError::InvalidOrder(order));
        }
        if order == 1.0 {
            Ok(Self::Shannon)
        } else {
            Ok(Self::Renyi { order })
        }
    }

    /// True for the infinite-order Tsallis limit, where detectors compare
    /// largest entries instead of evaluating the measure.
    pub fn is_max_order(&self) -> bool {
        matches!(self, Self::Tsallis { order } if order.is_infinite())
    }

    /// Evaluates the measure, with the conventions `0·ln 0 = 0` and
    /// `0^r = 0`. The result is finite and nonnegative, maximal at the
    /// uniform vector and zero exactly at a point mass.
    ///
    /// Panics for the infinite-order Tsallis measure, which has no
    /// pointwise evaluation; callers must branch on
    /// [`EntropyMeasure::is_max_order`] first.
    pub fn eval(&self, v: &ProbVec) -> f64 {
        match *self {
            Self::Shannon => v
                .entries()
                .iter()
                .map(|&x| if x > 0.0 { -x * x.ln() } else { 0.0 })
                .sum(),
            Self::Tsallis { order } => {
                assert!(
                    order.is_finite(),
                    "infinite-order Tsallis has no pointwise value; use the max-entry criterion"
                );
                (1.0 - power_sum(v.entries(), order)) / (order - 1.0)
            }
            Self::Renyi { order } => power_sum(v.entries(), order).ln() / (1.0 - order),
        }
    }
}

fn power_sum(entries: &[f64], order: f64) -> f64 {
    if order > COMPENSATED_ORDER {
        // Kahan summation; large orders leave 1 - sum dominated by rounding otherwise
        let mut sum = 0.0;
        let mut carry = 0.0;
        for &x in entries {
            let term = if x > 0.0 { x.powf(order) } else { 0.0 } - carry;
            let next = sum + term;
            carry = (next - sum) - term;
            sum = next;
        }
        sum
    } else {
        entries
            .iter()
            .map(|&x| if x > 0.0 { x.powf(order) } else { 0.0 })
            .sum()
    }
}

impl fmt::Display for EntropyMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Shannon => write!(f, "shannon"),
            Self::Tsallis { order } => write!(f, "tsallis:{}", OrderDisplay(order)),
            Self::Renyi { order } => write!(f, "renyi:{}", OrderDisplay(order)),
        }
    }
}

/// Formats an entropy order: `inf` for the infinite limit, integers
/// without a decimal point.
#[derive(Debug, Clone, Copy)]
pub struct OrderDisplay(pub f64);

impl fmt::Display for OrderDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            write!(f, "inf")
        } else if self.0.fract() == 0.0 {
            write!(f, "{}", self.0 as i64)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for EntropyMeasure {
    type Err = EntropyError;

    /// Parses the selection strings `shannon`, `tsallis:<r>`,
    /// `tsallis:inf`, and `renyi:<r>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use alloc::string::ToString;
        if s == "shannon" {
            return Ok(Self::Shannon);
        }
        if let Some(order) = s.strip_prefix("tsallis:") {
            if order == "inf" {
                return Self::tsallis(f64::INFINITY);
            }
            let order: f64 = order.parse().map_err(|_| EntropyError::Parse(s.to_string()))?;
            return Self::tsallis(order);
        }
        if let Some(order) = s.strip_prefix("renyi:") {
            let order: f64 = order.parse().map_err(|_| EntropyError::Parse(s.to_string()))?;
            return Self::renyi(order);
        }
        Err(EntropyError::Parse(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn pv(entries: &[f64]) -> ProbVec {
        ProbVec::new(entries.to_vec()).unwrap()
    }

    fn all_measures() -> Vec<EntropyMeasure> {
        vec![
            EntropyMeasure::Shannon,
            EntropyMeasure::tsallis(0.5).unwrap(),
            EntropyMeasure::tsallis(2.0).unwrap(),
            EntropyMeasure::tsallis(5.0).unwrap(),
            EntropyMeasure::tsallis(30.0).unwrap(),
            EntropyMeasure::renyi(0.5).unwrap(),
            EntropyMeasure::renyi(2.0).unwrap(),
        ]
    }

    #[test]
    fn eval_examples() {
        let half = pv(&[0.5, 0.5]);
        assert!((EntropyMeasure::Shannon.eval(&half) - core::f64::consts::LN_2).abs() < 1e-12);
        // (1 - 2^{1-2}) / (2 - 1) = 0.5
        assert!((EntropyMeasure::tsallis(2.0).unwrap().eval(&half) - 0.5).abs() < 1e-12);
        let point = pv(&[1.0, 0.0, 0.0]);
        for m in all_measures() {
            assert!(m.eval(&point).abs() < 1e-12, "{m} at point mass");
        }
    }

    #[test]
    fn order_one_resolves_to_shannon() {
        assert_eq!(EntropyMeasure::tsallis(1.0).unwrap(), EntropyMeasure::Shannon);
        assert_eq!(EntropyMeasure::renyi(1.0).unwrap(), EntropyMeasure::Shannon);
    }

    #[test]
    fn invalid_orders_rejected() {
        assert!(EntropyMeasure::tsallis(0.0).is_err());
        assert!(EntropyMeasure::tsallis(-2.0).is_err());
        assert!(EntropyMeasure::renyi(f64::INFINITY).is_err());
    }

    #[test]
    fn maximum_at_uniform() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for m in all_measures() {
            let at_uniform = m.eval(&ProbVec::uniform(4));
            for _ in 0..50 {
                let raw: Vec<f64> = (0..4).map(|_| rng.random_range(1e-3..1.0)).collect();
                let sum: f64 = raw.iter().sum();
                let v = pv(&raw.iter().map(|x| x / sum).collect::<Vec<_>>());
                assert!(m.eval(&v) <= at_uniform + 1e-10, "{m}");
            }
        }
    }

    #[test]
    fn symmetric_under_permutation() {
        let v = pv(&[0.1, 0.4, 0.2, 0.3]);
        let w = pv(&[0.3, 0.2, 0.4, 0.1]);
        for m in all_measures() {
            assert!((m.eval(&v) - m.eval(&w)).abs() < 1e-14, "{m}");
        }
    }

    // comparable pair generator: mixing permutations of b only increases disorder
    fn mix_of_permutations(b: &ProbVec, rng: &mut ChaCha12Rng) -> ProbVec {
        let d = b.len();
        let mut acc = vec![0.0; d];
        let mut weights: Vec<f64> = (0..3).map(|_| rng.random_range(0.01..1.0)).collect();
        let wsum: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= wsum;
        }
        for &w in &weights {
            let mut idx: Vec<usize> = (0..d).collect();
            for i in (1..d).rev() {
                let j = rng.random_range(0..=i);
                idx.swap(i, j);
            }
            for (k, &i) in idx.iter().enumerate() {
                acc[k] += w * b.entries()[i];
            }
        }
        ProbVec::new(acc).unwrap()
    }

    #[test]
    fn schur_concavity_on_comparable_pairs() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        for _ in 0..200 {
            let d = rng.random_range(2..=6);
            let raw: Vec<f64> = (0..d).map(|_| rng.random_range(1e-3..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            let b = pv(&raw.iter().map(|x| x / sum).collect::<Vec<_>>());
            let a = mix_of_permutations(&b, &mut rng);
            assert!(a.majorized_by(&b, 1e-9));
            for m in all_measures() {
                assert!(m.eval(&a) >= m.eval(&b) - 1e-10, "{m}: {a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn additivity_on_products() {
        let mut rng = ChaCha12Rng::seed_from_u64(37);
        for _ in 0..50 {
            let mk = |rng: &mut ChaCha12Rng, d: usize| {
                let raw: Vec<f64> = (0..d).map(|_| rng.random_range(1e-3..1.0)).collect();
                let sum: f64 = raw.iter().sum();
                pv(&raw.iter().map(|x| x / sum).collect::<Vec<_>>())
            };
            let a = mk(&mut rng, 3);
            let b = mk(&mut rng, 4);
            let joint = a.outer(&b);
            let h = EntropyMeasure::Shannon;
            assert!((h.eval(&joint) - h.eval(&a) - h.eval(&b)).abs() < 1e-10);
            let r = EntropyMeasure::renyi(2.0).unwrap();
            assert!((r.eval(&joint) - r.eval(&a) - r.eval(&b)).abs() < 1e-10);
            // Tsallis above order one is subadditive on products, not additive
            let t = EntropyMeasure::tsallis(2.0).unwrap();
            assert!(t.eval(&joint) <= t.eval(&a) + t.eval(&b) + 1e-12);
        }
    }

    #[test]
    fn large_order_stays_finite_and_ordered() {
        let m = EntropyMeasure::tsallis(30.0).unwrap();
        let near_point = pv(&[0.999, 0.001]);
        let val = m.eval(&near_point);
        assert!(val.is_finite() && val >= 0.0);
        assert!(m.eval(&pv(&[0.9, 0.1])) > val);
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["shannon", "tsallis:2", "tsallis:1.5", "tsallis:inf", "renyi:0.5"] {
            let m: EntropyMeasure = s.parse().unwrap();
            assert_eq!(alloc::format!("{m}"), s);
        }
        assert_eq!("tsallis:1".parse::<EntropyMeasure>(), Ok(EntropyMeasure::Shannon));
        assert!("tsallis".parse::<EntropyMeasure>().is_err());
        assert!("renyi:inf".parse::<EntropyMeasure>().is_err());
        assert!("gibbs".parse::<EntropyMeasure>().is_err());
    }

    #[test]
    fn max_order_flag() {
        assert!(EntropyMeasure::tsallis(f64::INFINITY).unwrap().is_max_order());
        assert!(!EntropyMeasure::tsallis(5.0).unwrap().is_max_order());
    }

    #[test]
    #[should_panic(expected = "max-entry")]
    fn eval_panics_at_infinite_order() {
        EntropyMeasure::tsallis(f64::INFINITY)
            .unwrap()
            .eval(&ProbVec::uniform(2));
    }
}
