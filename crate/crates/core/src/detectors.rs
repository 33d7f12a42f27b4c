//! Entanglement detectors built on majorization uncertainty bounds.
//!
//! Each detector compares an observed probability vector against a bound
//! that every separable state must respect; escaping the bound in the
//! majorization order certifies entanglement. The three majorization
//! detectors are:
//!
//! * [`measurement_detect`] — statistics of a single generalized
//!   measurement against the separable-state uncertainty bound;
//! * [`local_product_detect`] — joint statistics of local product
//!   measurements against the corresponding single-system bound;
//! * [`subsystem_disorder_detect`] — the global spectrum against the
//!   infimum of all proper reduced-state spectra.
//!
//! Every Schur-concave measure turns each majorization detector into a
//! scalar one ([`corollary_detect`]); they are never stronger than their
//! parent. Detectors are one-sided: a verdict of `Inconclusive` never
//! asserts separability.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::bounds::{self, BoundsError, OptimizerConfig};
use crate::entropy::EntropyMeasure;
use crate::probvec::{self, ProbVec, ProbVecError};
use crate::quantum::{
    bell_basis, born_probs, eig_hermitian, partial_trace, pauli_x, pauli_y, pauli_z,
    projective_from_observable, werner, DensityMatrix, Observable, Povm, PureState, QuantumError,
};

/// Default decision tolerance when the bound is analytic.
pub const TOL_DETECT_ANALYTIC: f64 = 1e-9;
/// Default decision tolerance when the bound comes from the stochastic
/// optimizer; the slack absorbs optimizer error toward `Inconclusive`,
/// never toward a false positive.
pub const TOL_DETECT_OPTIMIZED: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DetectorError {
    #[error("state must be bipartite for this detector")]
    NotBipartite,
    #[error("state must have at least two parties")]
    NotMultipartite,
    #[error("corollary expects {expected} probability vectors, got {got}")]
    ArityMismatch { expected: &'static str, got: usize },
    #[error("measure is not subadditive on products; the pairwise corollary would be unsound")]
    UnsupportedMeasure,
    #[error("order must be at least 1 (or infinite), got {0}")]
    InvalidOrder(f64),
    #[error("empty scan range")]
    EmptyRange,
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Probability(#[from] ProbVecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    Entangled,
    Inconclusive,
}

/// Outcome of a detector run. `Entangled` means the observed statistics
/// escape the separable bound by more than the tolerance; `Inconclusive`
/// never asserts separability.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// First partial-sum index (1-based) where majorization fails; absent
    /// for scalar detectors and for inconclusive verdicts.
    pub violated_index: Option<usize>,
    /// Size of the violation: the largest partial-sum excess for
    /// majorization detectors, the scalar criterion gap for corollaries.
    pub margin: f64,
    /// The compared pair, observed statistics first.
    pub observed: ProbVec,
    pub bound: ProbVec,
}

impl Verdict {
    pub fn is_entangled(&self) -> bool {
        self.status == VerdictStatus::Entangled
    }
}

/// Core comparison: `Entangled` exactly when some partial sum of the
/// observed vector exceeds the bound's by more than `tol`.
pub fn majorization_verdict(observed: &ProbVec, bound: &ProbVec, tol: f64) -> Verdict {
    let d = observed.len().max(bound.len());
    let pad = |v: &ProbVec| {
        let sorted = v.sorted_desc();
        let mut sums = sorted.partial_sums().expect("sorted");
        let last = *sums.last().expect("nonempty");
        sums.resize(d, last);
        sums
    };
    let obs_sums = pad(observed);
    let bound_sums = pad(bound);
    let mut margin = f64::NEG_INFINITY;
    let mut violated_index = None;
    for (j, (o, b)) in obs_sums.iter().zip(&bound_sums).enumerate() {
        let excess = o - b;
        if excess > margin {
            margin = excess;
        }
        if violated_index.is_none() && excess > tol {
            violated_index = Some(j + 1);
        }
    }
    Verdict {
        status: if margin > tol {
            VerdictStatus::Entangled
        } else {
            VerdictStatus::Inconclusive
        },
        violated_index,
        margin,
        observed: observed.clone(),
        bound: bound.clone(),
    }
}

/// Linear detector: measures `m` on the state and tests the statistics
/// against a separable-state bound for that measurement.
pub fn measurement_detect(
    sigma: &DensityMatrix,
    m: &Povm,
    sep_bound: &ProbVec,
    tol: f64,
) -> Result<Verdict, DetectorError> {
    let observed = born_probs(m, sigma)?;
    Ok(majorization_verdict(&observed, sep_bound, tol))
}

/// The rank-1 projective measurement that extracts the least disordered
/// statistics from `sigma`: projectors onto its eigenvectors.
///
/// Degenerate spectra leave the eigenbasis free. A fully degenerate state
/// gets the computational basis; a state of the isotropic family gets the
/// generalized Bell basis, whose elements stay maximally entangled across
/// the degenerate subspace; anything else uses the deterministic
/// eigenbasis of [`eig_hermitian`].
pub fn optimal_measurement(sigma: &DensityMatrix) -> Result<Povm, DetectorError> {
    let eig = eig_hermitian(sigma.matrix())?;
    let spread = eig.values[0] - eig.values[eig.values.len() - 1];
    if spread <= 1e-8 {
        return Ok(Povm::computational(sigma.dim()));
    }
    if let &[d_a, d_b] = sigma.dims() {
        if d_a == d_b {
            if let Some(q) = match_isotropic(sigma, d_a) {
                if q > 1e-8 {
                    return Ok(Povm::bell(d_a));
                }
            }
        }
    }
    let basis: Vec<PureState> = eig
        .vectors
        .into_iter()
        .map(|v| PureState::new(v, sigma.dims().to_vec()))
        .collect::<Result<_, _>>()?;
    Ok(Povm::from_basis("eigenbasis", &basis)?)
}

/// Mixing weight `q` if `sigma` lies in the isotropic family on two
/// `d`-level parties.
fn match_isotropic(sigma: &DensityMatrix, d: usize) -> Option<f64> {
    let bell = &bell_basis(d)[0];
    let p1 = sigma.matrix().expectation(bell.amplitudes()).re;
    let dim2 = (d * d) as f64;
    let q = (p1 * dim2 - 1.0) / (dim2 - 1.0);
    if !(0.0..=1.0).contains(&q) {
        return None;
    }
    let reference = werner(d, q).ok()?;
    (sigma.matrix().max_abs_diff(reference.matrix()) < 1e-8).then_some(q)
}

/// Builds the coarse-grained product measurement of two local observables
/// and measures it: elements project onto eigenspaces of the product
/// operator, so degenerate eigenvalue products stay merged.
pub fn product_measurement(a: &Observable, b: &Observable) -> Result<Povm, DetectorError> {
    Ok(projective_from_observable(&a.product(b)?)?)
}

/// Nonlinear detector for bipartite states: the joint statistics of local
/// product measurements must be majorized by the single-system bound for
/// the same measurement set. `single_sys_bound` is the all-states bound
/// of the local measurements on one party.
pub fn local_product_detect(
    sigma: &DensityMatrix,
    pairs: &[(Observable, Observable)],
    single_sys_bound: &ProbVec,
    tol: f64,
) -> Result<Verdict, DetectorError> {
    if sigma.parties() != 2 {
        return Err(DetectorError::NotBipartite);
    }
    if pairs.is_empty() {
        return Err(DetectorError::ArityMismatch {
            expected: "at least 1",
            got: 0,
        });
    }
    let mut vectors = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        let povm = product_measurement(a, b)?;
        vectors.push(born_probs(&povm, sigma)?);
    }
    let joint = ProbVec::outer_fold(&vectors)?;
    Ok(majorization_verdict(&joint, single_sys_bound, tol))
}

/// The same-axis Pauli observable pairs `(x, x), (y, y), (z, z)` used for
/// two-qubit correlation measurements.
pub fn pauli_product_pairs() -> Vec<(Observable, Observable)> {
    [pauli_x(), pauli_y(), pauli_z()]
        .into_iter()
        .map(|m| {
            let o = Observable::maximal(m).expect("pauli matrices are Hermitian");
            (o.clone(), o)
        })
        .collect()
}

/// The subsystem disorder of a multipartite state: spectra of all proper
/// reduced states and their majorization infimum.
#[derive(Debug, Clone)]
pub struct SubsystemDisorder {
    /// Reduced-state spectra keyed by the sorted party subset, in
    /// ascending bitmask order.
    pub subsystem_spectra: Vec<(Vec<usize>, ProbVec)>,
    /// Infimum of the spectra above; majorized by each of them.
    pub lambda_inf: ProbVec,
}

/// Sharpened global-versus-local disorder detector: a state is entangled
/// if its spectrum is not majorized by the infimum of all proper
/// reduced-state spectra.
pub fn subsystem_disorder_detect(
    rho: &DensityMatrix,
    tol: f64,
) -> Result<(Verdict, SubsystemDisorder), DetectorError> {
    let parties = rho.parties();
    if parties < 2 {
        return Err(DetectorError::NotMultipartite);
    }
    let mut subsystem_spectra = Vec::with_capacity((1usize << parties) - 2);
    for mask in 1..((1usize << parties) - 1) {
        let keep: Vec<usize> = (0..parties).filter(|p| mask & (1 << p) != 0).collect();
        let reduced = partial_trace(rho, &keep)?;
        subsystem_spectra.push((keep, reduced.spectrum()));
    }
    let spectra: Vec<ProbVec> = subsystem_spectra.iter().map(|(_, s)| s.clone()).collect();
    let lambda_inf = probvec::infimum(&spectra)?;
    let verdict = majorization_verdict(&rho.spectrum(), &lambda_inf, tol);
    Ok((
        verdict,
        SubsystemDisorder {
            subsystem_spectra,
            lambda_inf,
        },
    ))
}

/// Which majorization detector a scalar criterion descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corollary {
    /// Single measurement against a separable bound; one observed vector.
    C1,
    /// Local product measurements against a single-system bound; one
    /// observed vector per measurement, compared by summed measure.
    C2,
    /// Global spectrum against the subsystem disorder; one observed
    /// vector.
    C3,
}

/// Scalar detector: fires when the measure of the observed statistics
/// drops below the measure of the bound. By Schur-concavity this can only
/// happen when the parent majorization detector fires too.
///
/// For the infinite-order Tsallis limit the criterion degenerates to a
/// max-entry comparison (the product of max entries for `C2`), which is
/// exactly the first partial-sum test.
///
/// `C2` sums the measure over the observed vectors, which is sound only
/// for measures subadditive on products; the superadditive Tsallis family
/// below order one is rejected.
pub fn corollary_detect(
    measure: &EntropyMeasure,
    lhs: &[ProbVec],
    rhs_bound: &ProbVec,
    which: Corollary,
    tol: f64,
) -> Result<Verdict, DetectorError> {
    match which {
        Corollary::C1 | Corollary::C3 => {
            if lhs.len() != 1 {
                return Err(DetectorError::ArityMismatch {
                    expected: "exactly 1",
                    got: lhs.len(),
                });
            }
        }
        Corollary::C2 => {
            if lhs.len() < 2 {
                return Err(DetectorError::ArityMismatch {
                    expected: "at least 2",
                    got: lhs.len(),
                });
            }
            if let EntropyMeasure::Tsallis { order } = measure {
                if order.is_finite() && *order < 1.0 {
                    return Err(DetectorError::UnsupportedMeasure);
                }
            }
        }
    }
    let observed = ProbVec::outer_fold(lhs)?;
    let margin = if measure.is_max_order() {
        // max-entry criterion; multiplicative across independent factors
        let lhs_stat: f64 = lhs.iter().map(ProbVec::max_entry).product();
        lhs_stat - rhs_bound.max_entry()
    } else {
        let lhs_stat: f64 = lhs.iter().map(|v| measure.eval(v)).sum();
        measure.eval(rhs_bound) - lhs_stat
    };
    Ok(Verdict {
        status: if margin > tol {
            VerdictStatus::Entangled
        } else {
            VerdictStatus::Inconclusive
        },
        violated_index: None,
        margin,
        observed,
        bound: rhs_bound.clone(),
    })
}

/// How a threshold value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMethod {
    Analytic,
    Bisection,
}

/// Smallest mixing weight `q` at which a scalar detector starts flagging
/// the two-qudit isotropic family as entangled.
#[derive(Debug, Clone)]
pub struct ThresholdPoint {
    pub d: usize,
    pub measure: EntropyMeasure,
    pub q_star: f64,
    pub method: ThresholdMethod,
}

/// Detection threshold of the Tsallis-entropy criterion for the
/// two-qudit isotropic family under the Bell measurement: the smallest
/// `q` where the observed Tsallis entropy drops below the separable
/// bound's. The infinite-order limit is the known exact threshold
/// `1/(1+d)`; finite orders bisect the monotone margin to 1e-10.
pub fn tsallis_threshold(d: usize, order: f64) -> Result<ThresholdPoint, DetectorError> {
    if d < 2 {
        return Err(DetectorError::Quantum(QuantumError::InvalidParameter {
            name: "d",
            value: d as f64,
        }));
    }
    if order.is_nan() || order < 1.0 {
        return Err(DetectorError::InvalidOrder(order));
    }
    if order.is_infinite() {
        return Ok(ThresholdPoint {
            d,
            measure: EntropyMeasure::tsallis(order).expect("valid order"),
            q_star: 1.0 / (1.0 + d as f64),
            method: ThresholdMethod::Analytic,
        });
    }
    let measure = EntropyMeasure::tsallis(order).expect("valid order");
    let bound_value = measure.eval(&bounds::bell_separable_bound(d));
    // fires when the observed entropy falls below the bound's; the
    // observed spectrum sharpens monotonically in q, so the margin
    // crosses zero once
    let margin = |q: f64| bound_value - measure.eval(&crate::quantum::werner_spectrum(d, q));
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    debug_assert!(margin(lo) <= 0.0 && margin(hi) > 0.0);
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(ThresholdPoint {
        d,
        measure,
        q_star: 0.5 * (lo + hi),
        method: ThresholdMethod::Bisection,
    })
}

/// Threshold grid over party dimensions and Tsallis orders, row-major in
/// `(d, order)`.
pub fn werner_scan(
    d_range: core::ops::RangeInclusive<usize>,
    orders: &[f64],
) -> Result<Vec<ThresholdPoint>, DetectorError> {
    if d_range.is_empty() || orders.is_empty() {
        return Err(DetectorError::EmptyRange);
    }
    let mut out = Vec::new();
    for d in d_range {
        for &order in orders {
            out.push(tsallis_threshold(d, order)?);
        }
    }
    Ok(out)
}

/// Estimates the spectrum of a state as the supremum of rank-1
/// measurement statistics, searching over measurements rather than
/// states: for each component count the top probability mass any
/// orthonormal family captures is maximized by subspace iteration from
/// random starts. Converges to the eigenvalue spectrum.
pub fn estimate_spectrum(
    rho: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<ProbVec, DetectorError> {
    let dim = rho.dim();
    let restarts = cfg.restarts.clamp(1, 8);
    let mut mu = vec![0.0f64; dim];
    for i in 1..=dim {
        let mut best = 0.0f64;
        for restart in 0..restarts {
            let mut rng = ChaCha12Rng::seed_from_u64(
                cfg.seed ^ ((i as u64) << 32) ^ (0x517E * restart as u64 + 1),
            );
            let mut frame: Vec<Vec<num_complex::Complex64>> = (0..i)
                .map(|_| {
                    PureState::haar_random(vec![dim], &mut rng)
                        .amplitudes()
                        .to_vec()
                })
                .collect();
            orthonormalize(&mut frame);
            let mut last = f64::NEG_INFINITY;
            for _ in 0..cfg.max_iters {
                for column in frame.iter_mut() {
                    *column = rho.matrix().apply(column);
                }
                orthonormalize(&mut frame);
                let value: f64 = frame
                    .iter()
                    .map(|b| rho.matrix().expectation(b).re)
                    .sum();
                if (value - last).abs() < cfg.tol_fp {
                    last = value;
                    break;
                }
                last = value;
            }
            best = best.max(last);
        }
        mu[i - 1] = best.clamp(0.0, 1.0);
    }
    for j in 1..dim {
        if mu[j] < mu[j - 1] {
            mu[j] = mu[j - 1];
        }
    }
    mu[dim - 1] = 1.0;
    let envelope = probvec::least_concave_majorant(&mu);
    Ok(ProbVec::from_cumulative(&envelope)?)
}

fn orthonormalize(frame: &mut [Vec<num_complex::Complex64>]) {
    use num_complex::Complex64;
    let dim = frame[0].len();
    for t in 0..frame.len() {
        let (done, rest) = frame.split_at_mut(t);
        let v = &mut rest[0];
        let reduce = |v: &mut Vec<Complex64>| {
            for prev in done.iter() {
                let overlap: Complex64 =
                    prev.iter().zip(v.iter()).map(|(p, x)| p.conj() * x).sum();
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= overlap * p;
                }
            }
            v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
        };
        let mut n = reduce(v);
        if n <= 1e-12 {
            // column collapsed into the span of the others (the operator
            // is rank deficient); complete with a coordinate vector
            for coord in 0..dim {
                let mut candidate = vec![Complex64::new(0.0, 0.0); dim];
                candidate[coord] = Complex64::new(1.0, 0.0);
                let candidate_norm = reduce(&mut candidate);
                if candidate_norm > 1e-6 {
                    *v = candidate;
                    n = candidate_norm;
                    break;
                }
            }
        }
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}
