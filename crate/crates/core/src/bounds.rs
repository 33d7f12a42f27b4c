//! Measurement uncertainty bounds: the least upper bound, under
//! majorization, of the joint outcome statistics of a set of generalized
//! measurements, taken over all states or over separable states.
//!
//! The bound is assembled componentwise: its j-th cumulative maximum is
//! the largest total probability any state can place on j distinct joint
//! outcome tuples. Both suprema are attained on pure states (pure product
//! states in the separable case), so each component reduces to an
//! eigenvector fixed point: pick the currently heaviest j tuples, form
//! the weighted sum of their measurement elements, and move the state to
//! that operator's top eigenvector. The separable variant alternates the
//! same update one party at a time, each step an eigenproblem for that
//! party's effective operator with the other parties held fixed.
//!
//! Multi-start randomization guards against local maxima; seeds derive
//! deterministically from the configuration, so identical configurations
//! reproduce results bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::probvec::{self, ProbVec, ProbVecError};
use crate::quantum::{
    eig_hermitian, schmidt_coefficients, ComplexMatrix, DensityMatrix, Povm, PureState,
    QuantumError,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("measurement set must be nonempty")]
    EmptySet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("component index {index} out of range 1..={total}")]
    ComponentOutOfRange { index: usize, total: usize },
    #[error("party dimensions are empty or inconsistent with the measurement dimension")]
    InvalidParties,
    #[error("state is not bipartite")]
    NotBipartite,
    #[error("exhaustive verification is limited to {limit} outcomes, set has {total}")]
    TooManyOutcomes { total: usize, limit: usize },
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Probability(#[from] ProbVecError),
}

/// A list of generalized measurements on a common dimension.
#[derive(Debug, Clone)]
pub struct MeasurementSet {
    povms: Vec<Povm>,
}

impl MeasurementSet {
    pub fn new(povms: Vec<Povm>) -> Result<Self, BoundsError> {
        let first = povms.first().ok_or(BoundsError::EmptySet)?;
        let dim = first.dim();
        for p in &povms {
            if p.dim() != dim {
                return Err(BoundsError::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
        }
        Ok(Self { povms })
    }

    pub fn single(povm: Povm) -> Self {
        Self { povms: vec![povm] }
    }

    pub fn povms(&self) -> &[Povm] {
        &self.povms
    }

    pub fn dim(&self) -> usize {
        self.povms[0].dim()
    }

    /// Number of joint outcome tuples: the product of the per-measurement
    /// outcome counts.
    pub fn total_outcomes(&self) -> usize {
        self.povms.iter().map(Povm::len).product()
    }
}

/// Iteration control for the multi-start fixed-point optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub tol_fp: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            tol_fp: 1e-10,
            seed: 7,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

/// One cumulative component of a bound: the best value found, the state
/// witnessing it, and whether the winning restart reached the fixed-point
/// tolerance.
#[derive(Debug, Clone)]
pub struct ComponentResult {
    pub value: f64,
    pub witness: PureState,
    pub converged: bool,
}

/// A computed uncertainty bound with its cumulative maxima and
/// per-component witnesses.
#[derive(Debug, Clone)]
pub struct BoundResult {
    /// The bound itself: adjacent differences of the repaired cumulative
    /// maxima.
    pub bound: ProbVec,
    /// Raw cumulative maxima, one per joint outcome count.
    pub mu: Vec<f64>,
    /// Optimal state per component (pure, or pure product for the
    /// separable bound).
    pub witnesses: Vec<PureState>,
    /// Per-component convergence of the winning restart.
    pub converged: Vec<bool>,
}

// splitmix64 finalizer; decorrelates the per-(component, restart) streams
fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base
        ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ b.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn born_pure(povm: &Povm, amps: &[Complex64]) -> Vec<f64> {
    povm.elements()
        .iter()
        .map(|e| e.expectation(amps).re.max(0.0))
        .collect()
}

fn born_all(ms: &MeasurementSet, amps: &[Complex64]) -> Vec<Vec<f64>> {
    ms.povms.iter().map(|p| born_pure(p, amps)).collect()
}

/// Flat joint components; measurement 0 carries the slow index.
fn joint_components(born: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![1.0];
    for p in born {
        let mut next = Vec::with_capacity(out.len() * p.len());
        for &acc in &out {
            for &x in p {
                next.push(acc * x);
            }
        }
        out = next;
    }
    out
}

fn decode_tuple(mut flat: usize, counts: &[usize]) -> Vec<usize> {
    let mut digits = vec![0usize; counts.len()];
    for k in (0..counts.len()).rev() {
        digits[k] = flat % counts[k];
        flat /= counts[k];
    }
    digits
}

/// Indices of the `i` largest components, ties broken toward lower index.
fn top_indices(components: &[f64], i: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..components.len()).collect();
    order.sort_by(|&a, &b| {
        components[b]
            .partial_cmp(&components[a])
            .expect("finite probabilities")
            .then(a.cmp(&b))
    });
    order.truncate(i);
    order
}

fn sum_at(components: &[f64], indices: &[usize]) -> f64 {
    indices.iter().map(|&t| components[t]).sum()
}

/// Weighted effective operator for a set of outcome tuples: each selected
/// tuple contributes, for every measurement, its element weighted by the
/// other measurements' current outcome probabilities.
fn effective_operator(
    ms: &MeasurementSet,
    born: &[Vec<f64>],
    selected: &[usize],
    counts: &[usize],
) -> ComplexMatrix {
    let n_meas = ms.povms.len();
    let mut eff = ComplexMatrix::zeros(ms.dim());
    for &flat in selected {
        let digits = decode_tuple(flat, counts);
        for k in 0..n_meas {
            let mut weight = 1.0;
            for l in 0..n_meas {
                if l != k {
                    weight *= born[l][digits[l]];
                }
            }
            eff.add_scaled(weight, &ms.povms[k].elements()[digits[k]]);
        }
    }
    eff
}

fn overlap_residual(a: &[Complex64], b: &[Complex64]) -> f64 {
    let inner: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    (1.0 - inner.norm()).max(0.0)
}

/// Joint outcome statistics of the whole measurement set on one state:
/// the outer product of the individual Born vectors.
pub fn joint_probs(ms: &MeasurementSet, rho: &DensityMatrix) -> Result<ProbVec, BoundsError> {
    if ms.dim() != rho.dim() {
        return Err(BoundsError::DimensionMismatch {
            expected: rho.dim(),
            got: ms.dim(),
        });
    }
    let vectors: Vec<ProbVec> = ms
        .povms
        .iter()
        .map(|p| crate::quantum::born_probs(p, rho))
        .collect::<Result<_, _>>()?;
    Ok(ProbVec::outer_fold(&vectors)?)
}

/// The i-th cumulative maximum of the all-states bound: the largest total
/// probability any pure state places on `i` distinct joint outcome
/// tuples.
///
/// Multi-start fixed-point iteration: greedily select the `i` currently
/// heaviest tuples, form their effective operator, and replace the state
/// by its top eigenvector until the state stops moving. The best
/// objective seen across restarts is reported; if no restart reached the
/// fixed-point tolerance the result is flagged unconverged.
pub fn mu_sup_component(
    ms: &MeasurementSet,
    i: usize,
    cfg: &OptimizerConfig,
) -> Result<ComponentResult, BoundsError> {
    let total = ms.total_outcomes();
    if i == 0 || i > total {
        return Err(BoundsError::ComponentOutOfRange { index: i, total });
    }
    let counts: Vec<usize> = ms.povms.iter().map(Povm::len).collect();
    let dims = vec![ms.dim()];

    let mut best: Option<ComponentResult> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(cfg.seed, i as u64, restart as u64));
        let mut psi = PureState::haar_random(dims.clone(), &mut rng);
        let mut best_val = f64::NEG_INFINITY;
        let mut best_amps = psi.amplitudes().to_vec();
        let mut converged = false;

        for _ in 0..cfg.max_iters {
            let born = born_all(ms, psi.amplitudes());
            let components = joint_components(&born);
            let selected = top_indices(&components, i);
            let eff = effective_operator(ms, &born, &selected, &counts);
            let next = eig_hermitian(&eff)?.vectors.swap_remove(0);

            let next_born = born_all(ms, &next);
            let next_components = joint_components(&next_born);
            let val = sum_at(&next_components, &top_indices(&next_components, i));
            if val > best_val {
                best_val = val;
                best_amps = next.clone();
            }
            let residual = overlap_residual(psi.amplitudes(), &next);
            psi = PureState::new(next, dims.clone())?;
            if residual < cfg.tol_fp {
                converged = true;
                break;
            }
        }

        let candidate = ComponentResult {
            value: best_val,
            witness: PureState::new(best_amps, dims.clone())?,
            converged,
        };
        // strict improvement keeps the lowest restart index on ties
        if best.as_ref().is_none_or(|b| candidate.value > b.value) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Cap on the outcome count for exhaustive index-set verification.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Verification variant of [`mu_sup_component`]: enumerates every index
/// set of size `i` instead of selecting greedily, running the fixed-point
/// iteration with the set held fixed. Exponential in the outcome count,
/// hence capped at [`EXHAUSTIVE_LIMIT`] outcomes.
pub fn mu_sup_component_exhaustive(
    ms: &MeasurementSet,
    i: usize,
    cfg: &OptimizerConfig,
) -> Result<ComponentResult, BoundsError> {
    let total = ms.total_outcomes();
    if total > EXHAUSTIVE_LIMIT {
        return Err(BoundsError::TooManyOutcomes {
            total,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    if i == 0 || i > total {
        return Err(BoundsError::ComponentOutOfRange { index: i, total });
    }
    let counts: Vec<usize> = ms.povms.iter().map(Povm::len).collect();
    let dims = vec![ms.dim()];
    let restarts = (cfg.restarts / 8).max(4);

    let mut best: Option<ComponentResult> = None;
    for (set_id, subset) in combinations(total, i).into_iter().enumerate() {
        for restart in 0..restarts {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(
                cfg.seed,
                ((set_id as u64) << 16) | i as u64,
                restart as u64,
            ));
            let mut psi = PureState::haar_random(dims.clone(), &mut rng);
            let mut best_val = f64::NEG_INFINITY;
            let mut best_amps = psi.amplitudes().to_vec();
            let mut converged = false;
            for _ in 0..cfg.max_iters {
                let born = born_all(ms, psi.amplitudes());
                let eff = effective_operator(ms, &born, &subset, &counts);
                let next = eig_hermitian(&eff)?.vectors.swap_remove(0);
                let next_born = born_all(ms, &next);
                let val = sum_at(&joint_components(&next_born), &subset);
                if val > best_val {
                    best_val = val;
                    best_amps = next.clone();
                }
                let residual = overlap_residual(psi.amplitudes(), &next);
                psi = PureState::new(next, dims.clone())?;
                if residual < cfg.tol_fp {
                    converged = true;
                    break;
                }
            }
            let candidate = ComponentResult {
                value: best_val,
                witness: PureState::new(best_amps, dims.clone())?,
                converged,
            };
            if best.as_ref().is_none_or(|b| candidate.value > b.value) {
                best = Some(candidate);
            }
        }
    }
    Ok(best.expect("at least one subset"))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(k >= 1 && k <= n);
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // next combination in lexicographic order
        let mut pos = k;
        let mut advanced = false;
        while pos > 0 {
            pos -= 1;
            if current[pos] != pos + n - k {
                current[pos] += 1;
                for j in pos + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

fn assemble_bound(components: Vec<ComponentResult>) -> Result<BoundResult, BoundsError> {
    let mut mu: Vec<f64> = components.iter().map(|c| c.value.clamp(0.0, 1.0)).collect();
    // cumulative maxima are nondecreasing by definition; optimizer noise
    // on adjacent components is repaired before the envelope
    for j in 1..mu.len() {
        if mu[j] < mu[j - 1] {
            mu[j] = mu[j - 1];
        }
    }
    let last = mu.last_mut().expect("at least one component");
    debug_assert!(
        (*last - 1.0).abs() < 1e-9,
        "final cumulative maximum must be 1"
    );
    *last = 1.0;
    let envelope = probvec::least_concave_majorant(&mu);
    let bound = ProbVec::from_cumulative(&envelope)?;
    Ok(BoundResult {
        bound,
        mu,
        witnesses: components.iter().map(|c| c.witness.clone()).collect(),
        converged: components.iter().map(|c| c.converged).collect(),
    })
}

/// The uncertainty bound over all states: the majorization supremum of
/// the joint statistics of the measurement set. Every state's joint
/// outcome vector is majorized by it.
pub fn sup_all_states(
    ms: &MeasurementSet,
    cfg: &OptimizerConfig,
) -> Result<BoundResult, BoundsError> {
    let total = ms.total_outcomes();
    let components: Vec<ComponentResult> = (1..=total)
        .map(|i| mu_sup_component(ms, i, cfg))
        .collect::<Result<_, _>>()?;
    assemble_bound(components)
}

/// The uncertainty bound over separable states of the declared party
/// structure. Witnesses are pure product states; each component is
/// maximized by alternating top-eigenvector updates over the parties.
pub fn sup_separable(
    ms: &MeasurementSet,
    dims: &[usize],
    cfg: &OptimizerConfig,
) -> Result<BoundResult, BoundsError> {
    if dims.len() < 2 || dims.contains(&0) || dims.iter().product::<usize>() != ms.dim()
    {
        return Err(BoundsError::InvalidParties);
    }
    let total = ms.total_outcomes();
    let components: Vec<ComponentResult> = (1..=total)
        .map(|i| mu_sep_component(ms, dims, i, cfg))
        .collect::<Result<_, _>>()?;
    assemble_bound(components)
}

fn mu_sep_component(
    ms: &MeasurementSet,
    dims: &[usize],
    i: usize,
    cfg: &OptimizerConfig,
) -> Result<ComponentResult, BoundsError> {
    let total = ms.total_outcomes();
    if i == 0 || i > total {
        return Err(BoundsError::ComponentOutOfRange { index: i, total });
    }
    if i == 1 && dims.len() == 2 {
        if let Some(fast) = rank1_overlap_fast_path(ms, dims)? {
            return Ok(fast);
        }
    }
    let counts: Vec<usize> = ms.povms.iter().map(Povm::len).collect();
    let n_parties = dims.len();

    let mut best: Option<ComponentResult> = None;
    for restart in 0..cfg.restarts.max(1) {
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(
            cfg.seed ^ 0x5E9A_11AB,
            i as u64,
            restart as u64,
        ));
        let mut factors: Vec<Vec<Complex64>> = dims
            .iter()
            .map(|&d| {
                PureState::haar_random(vec![d], &mut rng)
                    .amplitudes()
                    .to_vec()
            })
            .collect();
        let mut product = product_state(&factors);
        let mut best_val = f64::NEG_INFINITY;
        let mut best_amps = product.clone();
        let mut converged = false;

        for _ in 0..cfg.max_iters {
            let born = born_all(ms, &product);
            let components = joint_components(&born);
            let selected = top_indices(&components, i);
            let eff = effective_operator(ms, &born, &selected, &counts);

            for party in 0..n_parties {
                let local = contract_except(&eff, &factors, dims, party);
                factors[party] = eig_hermitian(&local)?.vectors.swap_remove(0);
            }

            let next = product_state(&factors);
            let next_born = born_all(ms, &next);
            let next_components = joint_components(&next_born);
            let val = sum_at(&next_components, &top_indices(&next_components, i));
            if val > best_val {
                best_val = val;
                best_amps = next.clone();
            }
            let residual = overlap_residual(&product, &next);
            product = next;
            if residual < cfg.tol_fp {
                converged = true;
                break;
            }
        }

        let candidate = ComponentResult {
            value: best_val,
            witness: PureState::new(best_amps, dims.to_vec())?,
            converged,
        };
        if best.as_ref().is_none_or(|b| candidate.value > b.value) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Exact first component for a single measurement with rank-1 elements on
/// a bipartite system: the best product-state probability of an outcome
/// is the element weight times the squared top Schmidt coefficient of its
/// range vector.
fn rank1_overlap_fast_path(
    ms: &MeasurementSet,
    dims: &[usize],
) -> Result<Option<ComponentResult>, BoundsError> {
    if ms.povms.len() != 1 {
        return Ok(None);
    }
    let (d_a, d_b) = (dims[0], dims[1]);
    let mut best: Option<(f64, PureState)> = None;
    for element in ms.povms[0].elements() {
        let eig = eig_hermitian(element)?;
        if eig.values.len() > 1 && eig.values[1] > 1e-10 {
            return Ok(None);
        }
        let weight = eig.values[0];
        let range = PureState::new(eig.vectors[0].clone(), vec![d_a, d_b])?;
        let (sigma, left, right) = top_schmidt_triple(&range, d_a, d_b)?;
        let value = weight * sigma * sigma;
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            let witness =
                PureState::new(left, vec![d_a])?.tensor(&PureState::new(right, vec![d_b])?);
            best = Some((value, witness));
        }
    }
    Ok(best.map(|(value, witness)| ComponentResult {
        value,
        witness,
        converged: true,
    }))
}

/// Largest singular value of the bipartite amplitude matrix together with
/// the product factors achieving the overlap.
fn top_schmidt_triple(
    psi: &PureState,
    d_a: usize,
    d_b: usize,
) -> Result<(f64, Vec<Complex64>, Vec<Complex64>), BoundsError> {
    let amp = |i: usize, k: usize| psi.amplitudes()[i * d_b + k];
    let mut gram = ComplexMatrix::zeros(d_a);
    for r in 0..d_a {
        for s in 0..d_a {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d_b {
                acc += amp(r, k) * amp(s, k).conj();
            }
            gram[(r, s)] = acc;
        }
    }
    let eig = eig_hermitian(&gram)?;
    let sigma = eig.values[0].max(0.0).sqrt();
    let u = eig.vectors[0].clone();
    // right singular vector v = A† u / sigma; the factor on B is conj(v),
    // which maximizes |<u x phi_B | psi>|
    let mut right = vec![Complex64::new(0.0, 0.0); d_b];
    for (k, slot) in right.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (row, ui) in u.iter().enumerate() {
            acc += amp(row, k).conj() * ui;
        }
        *slot = (acc / sigma).conj();
    }
    Ok((sigma, u, right))
}

fn product_state(factors: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for &acc in &out {
            for &x in f {
                next.push(acc * x);
            }
        }
        out = next;
    }
    out
}

/// Effective operator on one party: the full operator contracted with the
/// current factors of every other party.
fn contract_except(
    eff: &ComplexMatrix,
    factors: &[Vec<Complex64>],
    dims: &[usize],
    party: usize,
) -> ComplexMatrix {
    let full = eff.dim();
    let d_p = dims[party];
    // local digit and other-party weight for every flat index
    let mut digit = vec![0usize; full];
    let mut weight = vec![Complex64::new(1.0, 0.0); full];
    for flat in 0..full {
        let mut rest = flat;
        let mut w = Complex64::new(1.0, 0.0);
        for (p, &d) in dims.iter().enumerate().rev() {
            let dig = rest % d;
            rest /= d;
            if p == party {
                digit[flat] = dig;
            } else {
                w *= factors[p][dig];
            }
        }
        weight[flat] = w;
    }
    let mut local = ComplexMatrix::zeros(d_p);
    for row in 0..full {
        for col in 0..full {
            let x = eff[(row, col)];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            local[(digit[row], digit[col])] += weight[row].conj() * x * weight[col];
        }
    }
    local
}

/// Squared largest Schmidt coefficient of a bipartite pure state: its
/// best overlap with any pure product state.
pub fn max_product_overlap(psi: &PureState) -> Result<f64, BoundsError> {
    let &[d_a, d_b] = psi.dims() else {
        return Err(BoundsError::NotBipartite);
    };
    let coeffs = schmidt_coefficients(psi, d_a, d_b)?;
    Ok(coeffs[0] * coeffs[0])
}

/// Stationarity diagnostic at a candidate witness for the i-th component:
/// the gap between the top eigenvalue of the effective operator and the
/// witness's expectation of it. Zero, to tolerance, at a fixed point.
pub fn stationarity_gap(
    ms: &MeasurementSet,
    i: usize,
    witness: &PureState,
) -> Result<f64, BoundsError> {
    let total = ms.total_outcomes();
    if i == 0 || i > total {
        return Err(BoundsError::ComponentOutOfRange { index: i, total });
    }
    let counts: Vec<usize> = ms.povms.iter().map(Povm::len).collect();
    let born = born_all(ms, witness.amplitudes());
    let components = joint_components(&born);
    let selected = top_indices(&components, i);
    let eff = effective_operator(ms, &born, &selected, &counts);
    let eig = eig_hermitian(&eff)?;
    Ok((eig.values[0] - eff.expectation(witness.amplitudes()).re).max(0.0))
}

/// Closed form of the all-states bound for the three mutually unbiased
/// qubit measurements (the Pauli triple). Eight components, the last four
/// zero.
pub fn pauli_triple_bound() -> ProbVec {
    let s3 = 1.0 + 1.0 / 3.0_f64.sqrt();
    let s2 = 1.0 + 1.0 / 2.0_f64.sqrt();
    let mu1 = s3 * s3 * s3 / 8.0;
    let mu2 = 2.0 * s2 * s2 / 8.0;
    let tail = (4.0 - s2 * s2) / 8.0;
    ProbVec::new(vec![mu1, mu2 - mu1, tail, tail, 0.0, 0.0, 0.0, 0.0])
        .expect("closed form is a probability vector")
}

/// Closed form of the separable-state bound for the generalized Bell
/// measurement on two d-level parties: d entries of 1/d followed by
/// zeros.
pub fn bell_separable_bound(d: usize) -> ProbVec {
    assert!(d >= 2, "bell measurement requires d >= 2");
    let mut entries = vec![0.0; d * d];
    for e in entries.iter_mut().take(d) {
        *e = 1.0 / d as f64;
    }
    ProbVec::new(entries).expect("closed form is a probability vector")
}
