//! Command-line front-end: load states, run entanglement detectors,
//! compute uncertainty bounds, and emit threshold scans.
//!
//! Exit codes make the tool scriptable: 0 for a clean run (detectors:
//! `Inconclusive`), 3 for `Entangled`, 1 for usage errors, 2 for invalid
//! input files.

mod report;
mod state_io;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use majdet_core::bounds::{
    bell_separable_bound, pauli_triple_bound, sup_all_states, sup_separable, BoundResult,
    MeasurementSet, OptimizerConfig,
};
use majdet_core::detectors::{
    corollary_detect, estimate_spectrum, measurement_detect, optimal_measurement,
    pauli_product_pairs, product_measurement, subsystem_disorder_detect, werner_scan, Corollary,
    Verdict, TOL_DETECT_ANALYTIC, TOL_DETECT_OPTIMIZED,
};
use majdet_core::entropy::EntropyMeasure;
use majdet_core::probvec::ProbVec;
use majdet_core::quantum::{
    born_probs, pauli_x, pauli_y, pauli_z, projective_from_observable, werner, DensityMatrix,
    Observable, Povm,
};

use report::{fmt_mu, fmt_sig, fmt_vec, scan_csv, verdict_lines};

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }

    fn invalid_input(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "majdet",
    version,
    about = "Majorization uncertainty bounds and entanglement detection for finite-dimensional states",
    long_about = "Detectors compare measurement statistics against bounds that all separable \
                  states respect; escaping a bound certifies entanglement. Entropies use the \
                  natural logarithm throughout."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an entanglement detector on a state
    Detect(DetectArgs),
    /// Compute a measurement uncertainty bound
    Bound(BoundArgs),
    /// Tabulate Tsallis detection thresholds over dimension and order
    WernerScan(WernerScanArgs),
    /// Estimate a spectrum by searching over rank-1 measurements
    SpectrumEstimate(SpectrumArgs),
}

#[derive(Args)]
struct DetectArgs {
    /// Detector: t1, t2, t3, or a scalar variant c1:<measure>,
    /// c2:<measure>, c3:<measure> with measure one of shannon,
    /// tsallis:<r>, tsallis:inf, renyi:<r>
    #[arg(long)]
    detector: String,
    /// Measurement for t1/c1 (bell, eigenbasis, file) and t2/c2 (pauli3)
    #[arg(long)]
    measurement: Option<String>,
    /// Measurement file (JSON) when --measurement file is selected
    #[arg(long)]
    povm: Option<PathBuf>,
    /// State file (JSON)
    #[arg(long, conflicts_with = "werner")]
    state: Option<PathBuf>,
    /// Built-in two-qudit isotropic state, e.g. d=2,q=0.5
    #[arg(long)]
    werner: Option<String>,
    /// Seed for optimizer-backed bounds
    #[arg(long)]
    seed: Option<u64>,
    /// Restarts for optimizer-backed bounds
    #[arg(long)]
    restarts: Option<usize>,
    /// Detection tolerance override (default 1e-9 analytic bounds, 1e-4
    /// optimizer bounds)
    #[arg(long)]
    tol: Option<f64>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArgs {
    /// Measurement set: bell, pauli3, or file
    #[arg(long)]
    measurement: String,
    /// Measurement file (JSON) when --measurement file is selected
    #[arg(long)]
    povm: Option<PathBuf>,
    /// Party dimensions, e.g. 2,2 (required for bell and for --separable)
    #[arg(long)]
    dims: Option<String>,
    /// Bound over separable states instead of all states
    #[arg(long)]
    separable: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    /// Fixed-point residual tolerance override (default 1e-10)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WernerScanArgs {
    /// Inclusive dimension range, e.g. 2..8
    #[arg(long)]
    d: String,
    /// Comma-separated Tsallis orders, e.g. 1,2,5,inf
    #[arg(long)]
    orders: String,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long, conflicts_with = "werner")]
    state: Option<PathBuf>,
    #[arg(long)]
    werner: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Detect(args) => {
            let (text, entangled) = run_detect(&args)?;
            emit(&args.out, &text)?;
            Ok(if entangled {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Bound(args) => {
            let text = run_bound(&args)?;
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::WernerScan(args) => {
            let text = run_werner_scan(&args)?;
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SpectrumEstimate(args) => {
            let text = run_spectrum(&args)?;
            emit(&args.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::invalid_input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DetectorChoice {
    T1,
    T2,
    T3,
}

fn parse_detector(s: &str) -> Result<(DetectorChoice, Option<EntropyMeasure>), CliError> {
    match s {
        "t1" => return Ok((DetectorChoice::T1, None)),
        "t2" => return Ok((DetectorChoice::T2, None)),
        "t3" => return Ok((DetectorChoice::T3, None)),
        _ => {}
    }
    for (prefix, choice) in [
        ("c1:", DetectorChoice::T1),
        ("c2:", DetectorChoice::T2),
        ("c3:", DetectorChoice::T3),
    ] {
        if let Some(measure) = s.strip_prefix(prefix) {
            let measure: EntropyMeasure = measure
                .parse()
                .map_err(|e| CliError::usage(format!("{e}")))?;
            return Ok((choice, Some(measure)));
        }
    }
    Err(CliError::usage(format!(
        "unknown detector `{s}`; expected t1, t2, t3, c1:<measure>, c2:<measure>, or c3:<measure>"
    )))
}

fn parse_werner_spec(s: &str) -> Result<(usize, f64), CliError> {
    let mut d = None;
    let mut q = None;
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("malformed werner spec `{s}`")))?;
        match key.trim() {
            "d" => {
                d = Some(value.trim().parse::<usize>().map_err(|_| {
                    CliError::usage(format!("invalid dimension in werner spec `{s}`"))
                })?)
            }
            "q" => {
                q = Some(value.trim().parse::<f64>().map_err(|_| {
                    CliError::usage(format!("invalid weight in werner spec `{s}`"))
                })?)
            }
            other => return Err(CliError::usage(format!("unknown werner key `{other}`"))),
        }
    }
    match (d, q) {
        (Some(d), Some(q)) => Ok((d, q)),
        _ => Err(CliError::usage(format!(
            "werner spec `{s}` must provide both d and q, e.g. d=2,q=0.5"
        ))),
    }
}

fn parse_dim_range(s: &str) -> Result<core::ops::RangeInclusive<usize>, CliError> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| CliError::usage(format!("malformed range `{s}`; expected a..b")))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid range start in `{s}`")))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("invalid range end in `{s}`")))?;
    if lo > hi {
        return Err(CliError::usage(format!("empty range `{s}`")));
    }
    Ok(lo..=hi)
}

fn parse_orders(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            if tok == "inf" {
                Ok(f64::INFINITY)
            } else {
                tok.parse::<f64>()
                    .map_err(|_| CliError::usage(format!("invalid order `{tok}`")))
            }
        })
        .collect()
}

fn parse_dims(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| CliError::usage(format!("invalid dimension `{tok}`")))
        })
        .collect()
}

fn load_state_arg(
    state: &Option<PathBuf>,
    werner_spec: &Option<String>,
) -> Result<(DensityMatrix, String), CliError> {
    match (state, werner_spec) {
        (Some(path), None) => Ok((
            state_io::load_state(path)?,
            format!("{}", path.display()),
        )),
        (None, Some(spec)) => {
            let (d, q) = parse_werner_spec(spec)?;
            let rho = werner(d, q)
                .map_err(|e| CliError::usage(format!("invalid werner parameters: {e}")))?;
            Ok((rho, format!("werner d={d} q={}", fmt_sig(q))))
        }
        _ => Err(CliError::usage(
            "exactly one of --state or --werner is required",
        )),
    }
}

fn optimizer_config(seed: Option<u64>, restarts: Option<usize>, tol_fp: Option<f64>) -> OptimizerConfig {
    let mut cfg = OptimizerConfig::default();
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(restarts) = restarts {
        cfg.restarts = restarts.max(1);
    }
    if let Some(tol) = tol_fp {
        cfg.tol_fp = tol;
    }
    cfg
}

/// Measurement and separable bound for the single-measurement detectors,
/// plus the default detection tolerance (tight for analytic bounds, loose
/// for optimizer-produced ones).
fn single_measurement_setup(
    args: &DetectArgs,
    rho: &DensityMatrix,
) -> Result<(Povm, ProbVec, f64, String), CliError> {
    let choice = args
        .measurement
        .as_deref()
        .ok_or_else(|| CliError::usage("--measurement is required for t1/c1"))?;
    match choice {
        "bell" => {
            let &[d_a, d_b] = rho.dims() else {
                return Err(CliError::usage(
                    "bell measurement requires a two-party state",
                ));
            };
            if d_a != d_b {
                return Err(CliError::usage(
                    "bell measurement requires equal party dimensions",
                ));
            }
            Ok((
                Povm::bell(d_a),
                bell_separable_bound(d_a),
                TOL_DETECT_ANALYTIC,
                "bell".into(),
            ))
        }
        "eigenbasis" | "file" => {
            let m = if choice == "file" {
                let path = args
                    .povm
                    .as_ref()
                    .ok_or_else(|| CliError::usage("--povm <path> is required with --measurement file"))?;
                let m = state_io::load_povm(path)?;
                if m.dim() != rho.dim() {
                    return Err(CliError::usage(format!(
                        "measurement dimension {} does not match state dimension {}",
                        m.dim(),
                        rho.dim()
                    )));
                }
                m
            } else {
                optimal_measurement(rho).map_err(|e| CliError::usage(format!("{e}")))?
            };
            if rho.parties() < 2 {
                return Err(CliError::usage(
                    "separable bounds need a multipartite state; declare dims in the state file",
                ));
            }
            let cfg = optimizer_config(args.seed, args.restarts, None);
            let bound = sup_separable(&MeasurementSet::single(m.clone()), rho.dims(), &cfg)
                .map_err(|e| CliError::usage(format!("{e}")))?
                .bound;
            Ok((m, bound, TOL_DETECT_OPTIMIZED, choice.into()))
        }
        "pauli3" => Err(CliError::usage(
            "pauli3 is a product-measurement set; use it with t2/c2",
        )),
        other => Err(CliError::usage(format!("unknown measurement `{other}`"))),
    }
}

fn run_detect(args: &DetectArgs) -> Result<(String, bool), CliError> {
    let (choice, measure) = parse_detector(&args.detector)?;
    let (rho, state_desc) = load_state_arg(&args.state, &args.werner)?;
    let mut out = format!("detector: {}\n", args.detector);
    out.push_str(&format!("state: {state_desc}\n"));
    out.push_str(&format!("dims: {:?}\n", rho.dims()));

    let verdict: Verdict = match choice {
        DetectorChoice::T1 => {
            let (m, bound, default_tol, label) = single_measurement_setup(args, &rho)?;
            let tol = args.tol.unwrap_or(default_tol);
            out.push_str(&format!("measurement: {label}\n"));
            match &measure {
                None => measurement_detect(&rho, &m, &bound, tol)
                    .map_err(|e| CliError::usage(format!("{e}")))?,
                Some(g) => {
                    out.push_str(&format!("measure: {g}\n"));
                    let stats =
                        born_probs(&m, &rho).map_err(|e| CliError::usage(format!("{e}")))?;
                    corollary_detect(g, &[stats], &bound, Corollary::C1, tol)
                        .map_err(|e| CliError::usage(format!("{e}")))?
                }
            }
        }
        DetectorChoice::T2 => {
            match args.measurement.as_deref() {
                Some("pauli3") | None => {}
                Some(other) => {
                    return Err(CliError::usage(format!(
                        "t2/c2 supports --measurement pauli3, got `{other}`"
                    )))
                }
            }
            if rho.dims() != [2, 2] {
                return Err(CliError::usage("t2/c2 requires a two-qubit state"));
            }
            let pairs = pauli_product_pairs();
            let bound = pauli_triple_bound();
            let tol = args.tol.unwrap_or(TOL_DETECT_ANALYTIC);
            out.push_str("measurement: pauli3 (same-axis correlation products)\n");
            match &measure {
                None => {
                    majdet_core::detectors::local_product_detect(&rho, &pairs, &bound, tol)
                        .map_err(|e| CliError::usage(format!("{e}")))?
                }
                Some(g) => {
                    out.push_str(&format!("measure: {g}\n"));
                    let stats: Vec<ProbVec> = pairs
                        .iter()
                        .map(|(a, b)| {
                            let povm = product_measurement(a, b)?;
                            Ok(born_probs(&povm, &rho)?)
                        })
                        .collect::<Result<_, majdet_core::detectors::DetectorError>>()
                        .map_err(|e| CliError::usage(format!("{e}")))?;
                    corollary_detect(g, &stats, &bound, Corollary::C2, tol)
                        .map_err(|e| CliError::usage(format!("{e}")))?
                }
            }
        }
        DetectorChoice::T3 => {
            let tol = args.tol.unwrap_or(TOL_DETECT_ANALYTIC);
            out.push_str("measurement: none (spectra of the state and its reductions)\n");
            let (verdict, disorder) = subsystem_disorder_detect(&rho, tol)
                .map_err(|e| CliError::usage(format!("{e}")))?;
            match &measure {
                None => verdict,
                Some(g) => {
                    out.push_str(&format!("measure: {g}\n"));
                    corollary_detect(g, &[rho.spectrum()], &disorder.lambda_inf, Corollary::C3, tol)
                        .map_err(|e| CliError::usage(format!("{e}")))?
                }
            }
        }
    };
    out.push_str(&verdict_lines(&verdict));
    Ok((out, verdict.is_entangled()))
}

fn run_bound(args: &BoundArgs) -> Result<String, CliError> {
    let cfg = optimizer_config(args.seed, args.restarts, args.tol);
    let dims = args.dims.as_deref().map(parse_dims).transpose()?;

    let (ms, label) = match args.measurement.as_str() {
        "bell" => {
            let dims = dims
                .clone()
                .ok_or_else(|| CliError::usage("--dims d,d is required for bell"))?;
            let &[d_a, d_b] = dims.as_slice() else {
                return Err(CliError::usage("bell needs exactly two parties"));
            };
            if d_a != d_b {
                return Err(CliError::usage("bell requires equal party dimensions"));
            }
            (MeasurementSet::single(Povm::bell(d_a)), "bell".to_string())
        }
        "pauli3" => {
            let povms = [pauli_x(), pauli_y(), pauli_z()]
                .into_iter()
                .map(|m| {
                    let obs = Observable::maximal(m)
                        .map_err(|e| CliError::usage(format!("{e}")))?;
                    projective_from_observable(&obs).map_err(|e| CliError::usage(format!("{e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            (
                MeasurementSet::new(povms).map_err(|e| CliError::usage(format!("{e}")))?,
                "pauli3".to_string(),
            )
        }
        "file" => {
            let path = args
                .povm
                .as_ref()
                .ok_or_else(|| CliError::usage("--povm <path> is required with --measurement file"))?;
            (
                MeasurementSet::single(state_io::load_povm(path)?),
                format!("{}", path.display()),
            )
        }
        other => return Err(CliError::usage(format!("unknown measurement `{other}`"))),
    };

    let (result, class): (BoundResult, String) = if args.separable {
        let dims = dims.ok_or_else(|| CliError::usage("--dims is required with --separable"))?;
        let r = sup_separable(&ms, &dims, &cfg).map_err(|e| CliError::usage(format!("{e}")))?;
        (r, format!("separable over dims {dims:?}"))
    } else {
        let r = sup_all_states(&ms, &cfg).map_err(|e| CliError::usage(format!("{e}")))?;
        (r, "all states".to_string())
    };

    let converged = result.converged.iter().filter(|c| **c).count();
    let mut out = String::new();
    out.push_str(&format!(
        "measurements: {label} ({} measurement(s), dim {}, {} outcomes)\n",
        ms.povms().len(),
        ms.dim(),
        ms.total_outcomes()
    ));
    out.push_str(&format!("class: {class}\n"));
    out.push_str(&format!("seed: {} restarts: {}\n", cfg.seed, cfg.restarts));
    out.push_str(&format!("mu: {}\n", fmt_mu(&result.mu)));
    out.push_str(&format!("bound: {}\n", fmt_vec(&result.bound)));
    out.push_str(&format!(
        "converged: {converged}/{} components\n",
        result.converged.len()
    ));
    Ok(out)
}

fn run_werner_scan(args: &WernerScanArgs) -> Result<String, CliError> {
    let range = parse_dim_range(&args.d)?;
    let orders = parse_orders(&args.orders)?;
    let points =
        werner_scan(range, &orders).map_err(|e| CliError::usage(format!("{e}")))?;
    Ok(scan_csv(&points))
}

fn run_spectrum(args: &SpectrumArgs) -> Result<String, CliError> {
    let (rho, desc) = load_state_arg(&args.state, &args.werner)?;
    let cfg = optimizer_config(args.seed, args.restarts, None);
    let estimated =
        estimate_spectrum(&rho, &cfg).map_err(|e| CliError::usage(format!("{e}")))?;
    let mut out = format!("state: {desc}\n");
    out.push_str(&format!("estimated spectrum: {}\n", fmt_vec(&estimated)));
    out.push_str(&format!("eigensolver spectrum: {}\n", fmt_vec(&rho.spectrum())));
    Ok(out)
}
