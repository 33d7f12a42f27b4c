//! Finite-dimensional quantum states and generalized measurements.
//!
//! Density matrices carry an ordered list of subsystem dimensions; party 0
//! is the slow (most significant) tensor index, and every Kronecker
//! product and partial trace in the crate follows that convention.
//! Measurement statistics are produced by the Born rule
//! `p_a = tr(E_a rho)` and land in [`ProbVec`], where the majorization
//! machinery takes over.

mod eig;
mod matrix;

pub use eig::{eig_hermitian, HermitianEigen};
pub use matrix::ComplexMatrix;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

use crate::probvec::{ProbVec, ProbVecError};

/// Hermiticity tolerance `max|M - M†|` for operators.
pub const TOL_HERMITIAN: f64 = 1e-10;
/// Unit-trace tolerance for density matrices.
pub const TOL_TRACE: f64 = 1e-10;
/// Eigenvalue floor for positive-semidefinite checks.
pub const TOL_PSD: f64 = 1e-10;
/// Norm tolerance for pure-state amplitudes.
pub const TOL_UNIT_NORM: f64 = 1e-12;
/// Eigenvalues closer than this fall in the same measurement bin.
pub const BIN_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("matrix is not Hermitian: max|M - M†| = {deviation}")]
    NotHermitian { deviation: f64 },
    #[error("trace is {trace}, not 1 within tolerance")]
    NotUnitTrace { trace: f64 },
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subsystem dimensions are empty or inconsistent with the matrix dimension")]
    InvalidDims,
    #[error("subsystem selection must be a nonempty proper subset of the parties")]
    InvalidSubsystems,
    #[error("state vector norm is {norm}, not 1 within tolerance")]
    NotNormalized { norm: f64 },
    #[error("measurement must contain at least one element")]
    EmptyPovm,
    #[error("measurement elements do not sum to identity: max deviation {deviation}")]
    IncompletePovm { deviation: f64 },
    #[error("bins do not partition the spectrum of the observable")]
    InvalidBins,
    #[error("parameter `{name}` = {value} is out of range")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("invalid probability vector: {0}")]
    Probability(#[from] ProbVecError),
}

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// A pure state: unit-norm complex amplitudes with subsystem dimension
/// tags.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self, QuantumError> {
        if dims.is_empty() || dims.contains(&0) || product(&dims) != amplitudes.len() {
            return Err(QuantumError::InvalidDims);
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > TOL_UNIT_NORM {
            return Err(QuantumError::NotNormalized { norm });
        }
        Ok(Self { amplitudes, dims })
    }

    /// The computational basis state with the given flat index.
    pub fn basis_state(dims: Vec<usize>, index: usize) -> Self {
        let dim = product(&dims);
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes, dims }
    }

    /// Haar-random pure state: independent complex Gaussian amplitudes,
    /// normalized.
    pub fn haar_random<R: Rng + ?Sized>(dims: Vec<usize>, rng: &mut R) -> Self {
        let dim = product(&dims);
        let mut amplitudes: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let n = norm(&amplitudes);
        for a in amplitudes.iter_mut() {
            *a /= n;
        }
        Self { amplitudes, dims }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { amplitudes, dims }
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            dims: self.dims.clone(),
        }
    }

    /// `|<self|other>|^2`.
    pub fn overlap_sqr(&self, other: &Self) -> f64 {
        let inner: Complex64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum();
        inner.norm_sqr()
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// A density matrix: Hermitian, positive semidefinite, unit trace, with
/// subsystem dimension tags.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates the full invariant set; rejects any violation beyond
    /// numerical slack.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self, QuantumError> {
        Self::build(matrix, dims, false)
    }

    /// Like [`DensityMatrix::new`] but repairs sub-tolerance defects:
    /// eigenvalues in `[-TOL_PSD, 0)` are clamped to zero and the trace
    /// renormalized. Intended for states loaded from external sources;
    /// harder violations are still rejected.
    pub fn clamped(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self, QuantumError> {
        Self::build(matrix, dims, true)
    }

    fn build(matrix: ComplexMatrix, dims: Vec<usize>, repair: bool) -> Result<Self, QuantumError> {
        if dims.is_empty() || dims.contains(&0) || product(&dims) != matrix.dim() {
            return Err(QuantumError::InvalidDims);
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > TOL_TRACE || trace.im.abs() > TOL_TRACE {
            return Err(QuantumError::NotUnitTrace { trace: trace.re });
        }
        let eig = eig_hermitian(&matrix)?;
        let min_eigenvalue = *eig.values.last().expect("dimension >= 1");
        if min_eigenvalue < -TOL_PSD {
            return Err(QuantumError::NotPositive { min_eigenvalue });
        }
        if repair && min_eigenvalue < 0.0 {
            let mut rebuilt = ComplexMatrix::zeros(matrix.dim());
            let total: f64 = eig.values.iter().map(|l| l.max(0.0)).sum();
            for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
                if *lambda > 0.0 {
                    rebuilt.add_scaled(lambda / total, &ComplexMatrix::outer(v));
                }
            }
            return Ok(Self { matrix: rebuilt, dims });
        }
        Ok(Self { matrix, dims })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        psi.to_density()
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Self {
        let dim = product(&dims);
        let matrix = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self {
            matrix: self.matrix.kron(&other.matrix),
            dims,
        }
    }

    /// Eigenvalues as a probability vector, sorted descending.
    pub fn spectrum(&self) -> ProbVec {
        let eig = eig_hermitian(&self.matrix).expect("density matrix is Hermitian");
        ProbVec::new(eig.values).expect("spectrum of a density matrix is a probability vector")
    }

    /// Convex mixture `sum_i w_i rho_i`. Weights must be a probability
    /// vector over the states.
    pub fn mixture(states: &[DensityMatrix], weights: &[f64]) -> Result<Self, QuantumError> {
        if states.is_empty() || states.len() != weights.len() {
            return Err(QuantumError::InvalidDims);
        }
        let dims = states[0].dims.clone();
        let mut matrix = ComplexMatrix::zeros(states[0].dim());
        for (rho, &w) in states.iter().zip(weights) {
            if rho.dims != dims {
                return Err(QuantumError::InvalidDims);
            }
            matrix.add_scaled(w, &rho.matrix);
        }
        Self::new(matrix, dims)
    }
}

/// A generalized measurement: positive elements summing to identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    label: String,
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(label: impl Into<String>, elements: Vec<ComplexMatrix>) -> Result<Self, QuantumError> {
        if elements.is_empty() {
            return Err(QuantumError::EmptyPovm);
        }
        let dim = elements[0].dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for e in &elements {
            if e.dim() != dim {
                return Err(QuantumError::DimensionMismatch {
                    expected: dim,
                    got: e.dim(),
                });
            }
            let eig = eig_hermitian(e)?;
            let min_eigenvalue = *eig.values.last().expect("dimension >= 1");
            if min_eigenvalue < -TOL_PSD {
                return Err(QuantumError::NotPositive { min_eigenvalue });
            }
            sum.add_scaled(1.0, e);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if deviation > TOL_HERMITIAN {
            return Err(QuantumError::IncompletePovm { deviation });
        }
        Ok(Self {
            label: label.into(),
            elements,
        })
    }

    /// Rank-1 projective measurement onto an orthonormal family of
    /// states.
    pub fn from_basis(label: impl Into<String>, basis: &[PureState]) -> Result<Self, QuantumError> {
        let elements = basis
            .iter()
            .map(|psi| ComplexMatrix::outer(psi.amplitudes()))
            .collect();
        Self::new(label, elements)
    }

    /// The computational-basis measurement.
    pub fn computational(dim: usize) -> Self {
        let elements = (0..dim)
            .map(|i| {
                let mut e = ComplexMatrix::zeros(dim);
                e[(i, i)] = Complex64::new(1.0, 0.0);
                e
            })
            .collect();
        Self {
            label: String::from("computational"),
            elements,
        }
    }

    /// The generalized Bell-basis measurement on two `d`-level parties.
    pub fn bell(d: usize) -> Self {
        let basis = bell_basis(d);
        let elements = basis
            .iter()
            .map(|psi| ComplexMatrix::outer(psi.amplitudes()))
            .collect();
        Self {
            label: String::from("bell"),
            elements,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: construction requires at least one element.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }
}

/// An observable together with a partition of its spectrum into
/// measurement bins. A maximal observable has one bin per distinct
/// eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
    bins: Vec<Vec<f64>>,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix, bins: Vec<Vec<f64>>) -> Result<Self, QuantumError> {
        let dev = matrix.hermitian_deviation();
        if dev > TOL_HERMITIAN {
            return Err(QuantumError::NotHermitian { deviation: dev });
        }
        if bins.is_empty() || bins.iter().any(Vec::is_empty) {
            return Err(QuantumError::InvalidBins);
        }
        Ok(Self { matrix, bins })
    }

    /// Maximal binning: one bin per distinct point of the spectrum.
    /// Degenerate eigenvalues share a bin, so the resulting measurement
    /// elements may have rank above one.
    pub fn maximal(matrix: ComplexMatrix) -> Result<Self, QuantumError> {
        let eig = eig_hermitian(&matrix)?;
        let mut bins: Vec<Vec<f64>> = Vec::new();
        for &value in &eig.values {
            match bins.last() {
                Some(bin) if (bin[0] - value).abs() <= BIN_TOL => {}
                _ => bins.push(vec![value]),
            }
        }
        Ok(Self { matrix, bins })
    }

    /// The product observable on the joint system, maximally binned.
    /// Degeneracies of the product spectrum are kept coarse: equal
    /// eigenvalue products share one bin, matching the usual convention
    /// for correlation measurements.
    pub fn product(&self, other: &Self) -> Result<Self, QuantumError> {
        Self::maximal(self.matrix.kron(&other.matrix))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn bins(&self) -> &[Vec<f64>] {
        &self.bins
    }
}

/// Outcome statistics of a measurement on a state, by the Born rule.
pub fn born_probs(m: &Povm, rho: &DensityMatrix) -> Result<ProbVec, QuantumError> {
    if m.dim() != rho.dim() {
        return Err(QuantumError::DimensionMismatch {
            expected: rho.dim(),
            got: m.dim(),
        });
    }
    let probs: Vec<f64> = m
        .elements()
        .iter()
        .map(|e| e.trace_product(rho.matrix()).re)
        .collect();
    Ok(ProbVec::new(probs)?)
}

/// One projector per bin: the sum of the eigenprojectors whose eigenvalues
/// fall in that bin. Errors unless the bins partition the spectrum.
pub fn projective_from_observable(o: &Observable) -> Result<Povm, QuantumError> {
    let eig = eig_hermitian(o.matrix())?;
    let dim = o.matrix().dim();
    let mut projectors = vec![ComplexMatrix::zeros(dim); o.bins().len()];
    let mut hits = vec![0usize; o.bins().len()];
    for (value, vector) in eig.values.iter().zip(&eig.vectors) {
        let mut assigned = None;
        for (b, bin) in o.bins().iter().enumerate() {
            if bin.iter().any(|point| (point - value).abs() <= BIN_TOL) {
                if assigned.is_some() {
                    return Err(QuantumError::InvalidBins);
                }
                assigned = Some(b);
            }
        }
        let b = assigned.ok_or(QuantumError::InvalidBins)?;
        projectors[b].add_scaled(1.0, &ComplexMatrix::outer(vector));
        hits[b] += 1;
    }
    if hits.contains(&0) {
        return Err(QuantumError::InvalidBins);
    }
    Povm::new("projective", projectors)
}

/// Reduced state on the listed parties, tracing out the rest.
///
/// `keep` must be a nonempty proper subset of the party indices; it is
/// used in sorted order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, QuantumError> {
    let parties = rho.parties();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() || keep.len() == parties || keep.iter().any(|&p| p >= parties) {
        return Err(QuantumError::InvalidSubsystems);
    }
    let traced: Vec<usize> = (0..parties).filter(|p| !keep.contains(p)).collect();

    let strides = strides(rho.dims());
    let keep_dims: Vec<usize> = keep.iter().map(|&p| rho.dims()[p]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&p| rho.dims()[p]).collect();
    let keep_dim = product(&keep_dims);

    // flat offsets contributed by each sub-index configuration
    let offsets = |positions: &[usize], dims: &[usize]| -> Vec<usize> {
        (0..product(dims))
            .map(|flat| {
                decode(flat, dims)
                    .iter()
                    .zip(positions)
                    .map(|(digit, &p)| digit * strides[p])
                    .sum()
            })
            .collect()
    };
    let keep_offsets = offsets(&keep, &keep_dims);
    let traced_offsets = offsets(&traced, &traced_dims);

    let mut out = ComplexMatrix::zeros(keep_dim);
    for i in 0..keep_dim {
        for j in 0..keep_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for offset in &traced_offsets {
                acc += rho.matrix()[(keep_offsets[i] + offset, keep_offsets[j] + offset)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(DensityMatrix {
        matrix: out,
        dims: keep_dims,
    })
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for p in (0..dims.len().saturating_sub(1)).rev() {
        strides[p] = strides[p + 1] * dims[p + 1];
    }
    strides
}

fn decode(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0usize; dims.len()];
    for p in (0..dims.len()).rev() {
        digits[p] = flat % dims[p];
        flat /= dims[p];
    }
    digits
}

/// The generalized Bell basis on two `d`-level parties: `d^2` orthonormal
/// maximally entangled states built by shift and phase,
/// `|B_mn> = d^{-1/2} sum_j e^{2 pi i j n / d} |j>|j + m mod d>`.
/// The first element is the totally symmetric state
/// `d^{-1/2} sum_j |j>|j>`.
pub fn bell_basis(d: usize) -> Vec<PureState> {
    assert!(d >= 2, "bell basis requires d >= 2");
    let dim = d * d;
    let scale = 1.0 / (d as f64).sqrt();
    let mut basis = Vec::with_capacity(dim);
    for m in 0..d {
        for n in 0..d {
            let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
            for j in 0..d {
                let angle = core::f64::consts::TAU * (j * n) as f64 / d as f64;
                amplitudes[j * d + (j + m) % d] =
                    Complex64::new(angle.cos(), angle.sin()) * scale;
            }
            basis.push(PureState {
                amplitudes,
                dims: vec![d, d],
            });
        }
    }
    basis
}

/// Schmidt coefficients of a bipartite pure state: singular values of the
/// `d_a x d_b` amplitude matrix, sorted descending. Their squares sum to
/// one.
pub fn schmidt_coefficients(
    psi: &PureState,
    d_a: usize,
    d_b: usize,
) -> Result<Vec<f64>, QuantumError> {
    if d_a * d_b != psi.dim() || d_a == 0 || d_b == 0 {
        return Err(QuantumError::DimensionMismatch {
            expected: psi.dim(),
            got: d_a * d_b,
        });
    }
    // Gram matrix on the smaller side keeps the eigenproblem minimal
    let (rows, transpose) = if d_a <= d_b { (d_a, false) } else { (d_b, true) };
    let amp = |i: usize, k: usize| psi.amplitudes()[i * d_b + k];
    let mut gram = ComplexMatrix::zeros(rows);
    for r in 0..rows {
        for s in 0..rows {
            let mut acc = Complex64::new(0.0, 0.0);
            let inner = if transpose { d_a } else { d_b };
            for k in 0..inner {
                let (x, y) = if transpose {
                    (amp(k, r), amp(k, s))
                } else {
                    (amp(r, k), amp(s, k))
                };
                acc += x * y.conj();
            }
            gram[(r, s)] = acc;
        }
    }
    let eig = eig_hermitian(&gram)?;
    Ok(eig.values.iter().map(|l| l.max(0.0).sqrt()).collect())
}

/// The isotropic family on two `d`-level parties:
/// `(1-q)/d^2 * identity + q |B_1><B_1|` with `B_1` the totally symmetric
/// Bell state. Separable exactly when `q <= 1/(1+d)`.
pub fn werner(d: usize, q: f64) -> Result<DensityMatrix, QuantumError> {
    if d < 2 {
        return Err(QuantumError::InvalidParameter {
            name: "d",
            value: d as f64,
        });
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(QuantumError::InvalidParameter { name: "q", value: q });
    }
    let dim = d * d;
    let bell = &bell_basis(d)[0];
    let mut matrix = ComplexMatrix::identity(dim).scale(Complex64::new((1.0 - q) / dim as f64, 0.0));
    matrix.add_scaled(q, &ComplexMatrix::outer(bell.amplitudes()));
    Ok(DensityMatrix {
        matrix,
        dims: vec![d, d],
    })
}

/// Closed-form spectrum of [`werner`]: a simple eigenvalue
/// `q + (1-q)/d^2` and a `(d^2-1)`-fold eigenvalue `(1-q)/d^2`. This is
/// also the Bell-basis outcome distribution for that state.
pub fn werner_spectrum(d: usize, q: f64) -> ProbVec {
    let dim = (d * d) as f64;
    let rest = (1.0 - q) / dim;
    let mut entries = vec![rest; d * d];
    entries[0] = q + rest;
    ProbVec::new(entries).expect("analytic spectrum is a probability vector")
}

pub fn pauli_x() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::new(1.0, 0.0);
    m[(1, 0)] = Complex64::new(1.0, 0.0);
    m
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

pub fn pauli_z() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m[(1, 1)] = Complex64::new(-1.0, 0.0);
    m
}
