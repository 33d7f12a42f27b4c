//! Probability vectors, the majorization partial order, and the lattice
//! operations infimum and supremum.
//!
//! A vector `a` is majorized by `b` (written `a ≺ b`) when every partial
//! sum of the descending rearrangement of `a` is dominated by the
//! corresponding partial sum of `b`, after zero-padding both to a common
//! length. Majorization orders probability vectors by disorder: `a ≺ b`
//! means `a` is at least as disordered as `b`, and every symmetric concave
//! function agrees with that verdict. The order is partial; vectors whose
//! partial sums cross are incomparable.
//!
//! The set of probability vectors forms a lattice under `≺`. The infimum
//! takes pointwise minima of partial sums (always concave, so no repair is
//! needed); the supremum takes pointwise maxima, which may fail concavity
//! and is repaired with the least concave majorant.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use thiserror::Error;

/// Numerical slack for probability-vector invariants and default
/// comparison tolerance.
pub const EPS_NUM: f64 = 1e-12;

/// Errors arising from probability-vector construction and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbVecError {
    #[error("probability vector must have dimension >= 1")]
    Empty,
    #[error("entry {index} is {value}, more negative than the permitted slack")]
    NegativeEntry { index: usize, value: f64 },
    #[error("entries sum to {sum}, not 1 within numerical slack")]
    NotNormalized { sum: f64 },
    #[error("operation requires entries sorted in nonincreasing order")]
    NotSorted,
    #[error("operation requires a nonempty set of vectors")]
    EmptySet,
}

/// Outcome of a majorization comparison between two probability vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajOrder {
    /// The first vector is majorized by the second (`a ≺ b`): the first is
    /// more disordered.
    FirstMajorized,
    /// The second vector is majorized by the first (`b ≺ a`).
    SecondMajorized,
    /// Sorted descending, the vectors agree entrywise after zero-padding.
    Equal,
    /// Partial sums cross; neither majorizes the other.
    Incomparable,
}

/// A finite probability vector: nonnegative entries summing to one.
///
/// Entries within `-EPS_NUM` of zero are clamped to zero on construction
/// and the vector renormalized; more negative entries are rejected, as are
/// sums deviating from one by more than `EPS_NUM`. Values are immutable
/// after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec {
    entries: Vec<f64>,
}

impl ProbVec {
    /// Builds a probability vector, enforcing the nonnegativity and
    /// normalization invariants.
    pub fn new(entries: Vec<f64>) -> Result<Self, ProbVecError> {
        if entries.is_empty() {
            return Err(ProbVecError::Empty);
        }
        let mut entries = entries;
        for (index, e) in entries.iter_mut().enumerate() {
            if *e < -EPS_NUM {
                return Err(ProbVecError::NegativeEntry { index, value: *e });
            }
            if *e < 0.0 {
                *e = 0.0;
            }
        }
        let sum: f64 = entries.iter().sum();
        if (sum - 1.0).abs() > EPS_NUM {
            return Err(ProbVecError::NotNormalized { sum });
        }
        for e in entries.iter_mut() {
            *e /= sum;
        }
        Ok(Self { entries })
    }

    /// The uniform distribution on `dim` outcomes.
    pub fn uniform(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        Self {
            entries: vec![1.0 / dim as f64; dim],
        }
    }

    /// The point mass `(1, 0, ..., 0)`, the top of the majorization order.
    pub fn point_mass(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be >= 1");
        let mut entries = vec![0.0; dim];
        entries[0] = 1.0;
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: construction requires dimension at least one.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().cloned().fold(0.0, f64::max)
    }

    /// Returns the entries rearranged in nonincreasing order. The sort is
    /// stable: tied entries keep their original relative order.
    pub fn sorted_desc(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_by(|a, b| b.partial_cmp(a).expect("entries are finite"));
        Self { entries }
    }

    fn is_sorted_desc(&self) -> bool {
        // slack absorbs rounding in entries reconstructed from partial sums
        self.entries.windows(2).all(|w| w[0] >= w[1] - EPS_NUM)
    }

    /// Cumulative sums of an already-sorted vector. The final element is
    /// one (up to slack) and the increments are nonincreasing, so the
    /// sequence is concave.
    pub fn partial_sums(&self) -> Result<Vec<f64>, ProbVecError> {
        if !self.is_sorted_desc() {
            return Err(ProbVecError::NotSorted);
        }
        Ok(cumulative(&self.entries))
    }

    /// True when the vector is strictly majorized by the point mass, i.e.
    /// no single outcome carries all the probability.
    pub fn is_uncertain(&self) -> bool {
        self.max_entry() < 1.0 - EPS_NUM
    }

    /// Joint distribution of two independent outcome sets: all pairwise
    /// products, with the first factor as the slow index.
    pub fn outer(&self, other: &ProbVec) -> ProbVec {
        let mut entries = Vec::with_capacity(self.len() * other.len());
        for &a in &self.entries {
            for &b in &other.entries {
                entries.push(a * b);
            }
        }
        ProbVec { entries }
    }

    /// Folds [`ProbVec::outer`] over a nonempty list of vectors.
    pub fn outer_fold(vectors: &[ProbVec]) -> Result<ProbVec, ProbVecError> {
        let (first, rest) = vectors.split_first().ok_or(ProbVecError::EmptySet)?;
        Ok(rest.iter().fold(first.clone(), |acc, v| acc.outer(v)))
    }

    /// Majorization comparison with explicit tolerance on the partial
    /// sums. Vectors are zero-padded to the larger dimension.
    pub fn compare(&self, other: &ProbVec, tol: f64) -> MajOrder {
        let d = self.len().max(other.len());
        let sa = padded_sorted_sums(self, d);
        let sb = padded_sorted_sums(other, d);
        let first_majorized = sa.iter().zip(&sb).all(|(a, b)| *a <= *b + tol);
        let second_majorized = sb.iter().zip(&sa).all(|(b, a)| *b <= *a + tol);
        match (first_majorized, second_majorized) {
            (true, true) => MajOrder::Equal,
            (true, false) => MajOrder::FirstMajorized,
            (false, true) => MajOrder::SecondMajorized,
            (false, false) => MajOrder::Incomparable,
        }
    }

    /// Shorthand for `compare` returning whether `self ≺ other` (counting
    /// equality).
    pub fn majorized_by(&self, other: &ProbVec, tol: f64) -> bool {
        matches!(
            self.compare(other, tol),
            MajOrder::FirstMajorized | MajOrder::Equal
        )
    }

    /// Builds the vector whose partial sums are the given cumulative
    /// sequence. The sequence must be nondecreasing up to slack and end at
    /// one; tiny negative increments from rounding are clamped to zero.
    pub fn from_cumulative(mu: &[f64]) -> Result<Self, ProbVecError> {
        if mu.is_empty() {
            return Err(ProbVecError::Empty);
        }
        let last = *mu.last().expect("nonempty");
        if (last - 1.0).abs() > EPS_NUM {
            return Err(ProbVecError::NotNormalized { sum: last });
        }
        let mut prev = 0.0;
        for (index, &m) in mu.iter().enumerate() {
            if m < prev - EPS_NUM {
                return Err(ProbVecError::NegativeEntry { index, value: m - prev });
            }
            prev = m;
        }
        Ok(Self {
            entries: differences(mu),
        })
    }
}

fn cumulative(entries: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    entries
        .iter()
        .map(|e| {
            acc += e;
            acc
        })
        .collect()
}

fn padded_sorted_sums(v: &ProbVec, dim: usize) -> Vec<f64> {
    let sorted = v.sorted_desc();
    let mut sums = cumulative(&sorted.entries);
    let last = *sums.last().expect("dimension >= 1");
    sums.resize(dim, last);
    sums
}

/// Greatest lower bound of a set of probability vectors under
/// majorization.
///
/// Each vector is sorted descending and zero-padded to the largest
/// dimension present; the j-th partial sum of the result is the minimum of
/// the j-th partial sums over the set. Minima of concave sequences are
/// concave, so the adjacent differences directly form a valid sorted
/// vector.
pub fn infimum(set: &[ProbVec]) -> Result<ProbVec, ProbVecError> {
    let mu = extremal_sums(set, f64::min)?;
    Ok(ProbVec {
        entries: differences(&mu),
    })
}

/// Least upper bound of a set of probability vectors under majorization.
///
/// Starts from the pointwise maxima of the padded partial sums. Maxima of
/// concave sequences need not be concave, so the points are repaired with
/// the least concave majorant (endpoints `(0, 0)` and `(d, 1)` fixed)
/// before differencing. The repair is minimal: lowering any repaired value
/// would either break concavity or stop dominating some input.
pub fn supremum(set: &[ProbVec]) -> Result<ProbVec, ProbVecError> {
    let mu = extremal_sums(set, f64::max)?;
    let repaired = least_concave_majorant(&mu);
    Ok(ProbVec {
        entries: differences(&repaired),
    })
}

fn extremal_sums(
    set: &[ProbVec],
    pick: fn(f64, f64) -> f64,
) -> Result<Vec<f64>, ProbVecError> {
    let d_max = set.iter().map(ProbVec::len).max().ok_or(ProbVecError::EmptySet)?;
    let mut mu = padded_sorted_sums(&set[0], d_max);
    for v in &set[1..] {
        for (m, s) in mu.iter_mut().zip(padded_sorted_sums(v, d_max)) {
            *m = pick(*m, s);
        }
    }
    // exactness at the endpoint; inputs each sum to 1 up to slack
    mu[d_max - 1] = 1.0;
    Ok(mu)
}

fn differences(mu: &[f64]) -> Vec<f64> {
    let mut prev = 0.0;
    mu.iter()
        .map(|&m| {
            // increments inside the numerical slack are zeros
            let d = m - prev;
            prev = m;
            if d < EPS_NUM {
                0.0
            } else {
                d
            }
        })
        .collect()
}

/// Least concave majorant of the cumulative values `mu[0..n]`, read as the
/// points `(1, mu[0]), ..., (n, mu[n-1])` together with the fixed origin
/// `(0, 0)`.
///
/// Returns the envelope evaluated at the same integer abscissas. This is
/// the upper convex hull of the point set, the unique minimal concave
/// sequence dominating the input, hence the least upper bound when the
/// input arises from partial-sum maxima.
pub fn least_concave_majorant(mu: &[f64]) -> Vec<f64> {
    let n = mu.len();
    // hull over (0, 0), (1, mu[0]), ..., (n, mu[n-1]); indices are the x coordinates
    let y = |j: usize| if j == 0 { 0.0 } else { mu[j - 1] };
    let mut hull: Vec<usize> = vec![0];
    for j in 1..=n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // keep b only if it lies strictly above chord a->j
            let cross = (y(b) - y(a)) * (j - a) as f64 - (y(j) - y(a)) * (b - a) as f64;
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    let mut env = vec![0.0; n];
    for seg in hull.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let slope = (y(b) - y(a)) / (b - a) as f64;
        for j in (a + 1)..=b {
            env[j - 1] = y(a) + slope * (j - a) as f64;
        }
    }
    env
}
