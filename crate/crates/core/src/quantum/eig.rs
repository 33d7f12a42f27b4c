//! Deterministic dense Hermitian eigensolver.
//!
//! Cyclic Jacobi with complex rotations. The dimensions in scope are tiny
//! (a few dozen at most), where Jacobi is plenty fast, unconditionally
//! stable, and free of library-dependent nondeterminism. Degenerate
//! eigenspaces are re-canonicalized by Gram-Schmidt over the projected
//! coordinate basis in fixed order, so equal inputs produce bit-equal
//! eigenbases regardless of the rotation path.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::{ComplexMatrix, QuantumError, TOL_HERMITIAN};

/// Eigenvalues in nonincreasing order with matching orthonormal
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

/// Eigenvalues closer than this are treated as one degenerate cluster.
const CLUSTER_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

/// Full eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted descending. Degenerate subspaces come back
/// with a deterministic orthonormal basis chosen by projecting coordinate
/// vectors in index order, and every eigenvector is phase-fixed so its
/// largest-magnitude component is real and positive.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<HermitianEigen, QuantumError> {
    let dev = m.hermitian_deviation();
    if dev > TOL_HERMITIAN {
        return Err(QuantumError::NotHermitian { deviation: dev });
    }
    let n = m.dim();

    // symmetrize to kill the sub-tolerance asymmetry before rotating
    let mut a = m.add(&m.dagger()).scale(Complex64::new(0.5, 0.0));
    let mut v = ComplexMatrix::identity(n);

    let scale: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1.0);

    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = {
            let mut acc = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    acc += a[(p, q)].norm_sqr();
                }
            }
            acc.sqrt()
        };
        if off <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    // sort descending, stable in the original index order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).expect("finite"));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[(row, col)]).collect())
        .collect();

    canonicalize_clusters(&values, &mut vectors);
    Ok(HermitianEigen { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let m = beta.norm();
    if m < 1e-300 {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * m);
    let t = if tau == 0.0 {
        1.0
    } else {
        let sign = if tau > 0.0 { 1.0 } else { -1.0 };
        sign / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let u = (beta / m).conj(); // e^{-i phi}

    let n = a.dim();
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[(r, p)];
        let arq = a[(r, q)];
        let new_rp = c * arp - s * u * arq;
        let new_rq = s * arp + c * u * arq;
        a[(r, p)] = new_rp;
        a[(r, q)] = new_rq;
        a[(p, r)] = new_rp.conj();
        a[(q, r)] = new_rq.conj();
    }
    a[(p, p)] = Complex64::new(alpha - t * m, 0.0);
    a[(q, q)] = Complex64::new(gamma + t * m, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for r in 0..n {
        let vrp = v[(r, p)];
        let vrq = v[(r, q)];
        v[(r, p)] = c * vrp - s * u * vrq;
        v[(r, q)] = s * vrp + c * u * vrq;
    }
}

fn canonicalize_clusters(values: &[f64], vectors: &mut [Vec<Complex64>]) {
    let n = values.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[end - 1] - values[end] <= CLUSTER_TOL * values[start].abs().max(1.0)
        {
            end += 1;
        }
        if end - start > 1 {
            rebuild_degenerate_basis(&mut vectors[start..end]);
        }
        for vec in vectors[start..end].iter_mut() {
            fix_phase(vec);
        }
        start = end;
    }
}

/// Replaces a degenerate cluster's basis with the Gram-Schmidt
/// orthonormalization of the coordinate vectors projected onto the
/// cluster span, taken in index order.
fn rebuild_degenerate_basis(cluster: &mut [Vec<Complex64>]) {
    let n = cluster[0].len();
    let k = cluster.len();
    let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for coord in 0..n {
        if accepted.len() == k {
            break;
        }
        // w = P e_coord, with P the projector onto the cluster span
        let mut w: Vec<Complex64> = (0..n)
            .map(|row| {
                cluster
                    .iter()
                    .map(|v| v[row] * v[coord].conj())
                    .sum::<Complex64>()
            })
            .collect();
        for prev in &accepted {
            let overlap: Complex64 = prev.iter().zip(&w).map(|(p, x)| p.conj() * x).sum();
            for (x, p) in w.iter_mut().zip(prev) {
                *x -= overlap * p;
            }
        }
        let norm: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for x in w.iter_mut() {
                *x /= norm;
            }
            accepted.push(w);
        }
    }
    if accepted.len() == k {
        for (slot, basis) in cluster.iter_mut().zip(accepted) {
            *slot = basis;
        }
    }
    // a span of dimension k always yields k projected coordinates with
    // norm bounded away from zero; if rounding ever says otherwise, the
    // Jacobi basis is kept as-is
}

fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_norm = 0.0;
    for (i, x) in v.iter().enumerate() {
        let nrm = x.norm_sqr();
        if nrm > best_norm + 1e-15 {
            best_norm = nrm;
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() > 0.0 {
        let phase = pivot / pivot.norm();
        let correction = phase.conj();
        for x in v.iter_mut() {
            *x *= correction;
        }
    }
}
