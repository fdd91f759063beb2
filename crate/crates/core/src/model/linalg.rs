//! Dense complex linear algebra support.
//!
//! Matrices in this crate are small (at most a few hundred rows), so we use
//! dense [`nalgebra`] storage and compute spectra with a cyclic Jacobi
//! eigensolver on Hermitian Gram matrices. Operator norms are largest
//! singular values, numerical ranks count singular values above a relative
//! cutoff.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Dense square-or-rectangular complex matrix used throughout the crate.
pub type CMatrix = DMatrix<Complex64>;

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi rotations.
///
/// The input is assumed Hermitian; only the upper triangle is trusted.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Vec<f64> {
    let n = h.nrows();
    assert_eq!(n, h.ncols(), "hermitian_eigenvalues wants a square matrix");
    if n == 0 {
        return vec![];
    }
    let mut a = h.clone();
    // Symmetrize against roundoff in the caller's Gram product.
    for p in 0..n {
        a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
        for q in (p + 1)..n {
            let avg = (a[(p, q)] + a[(q, p)].conj()) * 0.5;
            a[(p, q)] = avg;
            a[(q, p)] = avg.conj();
        }
    }
    let scale: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if scale == 0.0 {
        return vec![0.0; n];
    }
    let tol = f64::EPSILON * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= tol * 1e-3 {
                    continue;
                }
                // Unitary 2x2 rotation [[c, s], [-s̄, c]] annihilating (p,q).
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / abs;
                // annihilation condition: |h| (1 - t^2) + (aqq - app) t = 0,
                // stable root of t^2 - 2 tau t - 1 = 0
                let tau = (aqq - app) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * c);
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c + akq * s.conj();
                    a[(k, q)] = -akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c + aqk * s;
                    a[(q, k)] = -apk * s.conj() + aqk * c;
                }
                a[(p, q)] = C_ZERO;
                a[(q, p)] = C_ZERO;
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
    eigs
}

/// Singular values of a rectangular matrix, descending.
///
/// One-sided Jacobi: columns are rotated pairwise until mutually
/// orthogonal, and the singular values are the final column norms. Unlike
/// the Gram-matrix route this resolves singular values far below
/// `sqrt(eps) * sigma_max`, which the rank cutoffs here rely on.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let (r, c) = (m.nrows(), m.ncols());
    if r == 0 || c == 0 {
        return vec![];
    }
    let mut a = if r >= c { m.clone() } else { m.adjoint() };
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut norms2: Vec<f64> = (0..cols)
        .map(|j| (0..rows).map(|i| a[(i, j)].norm_sqr()).sum())
        .collect();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let (np, nq) = (norms2[p], norms2[q]);
                if np == 0.0 || nq == 0.0 {
                    continue;
                }
                let mut g = C_ZERO;
                for i in 0..rows {
                    g += a[(i, p)].conj() * a[(i, q)];
                }
                if g.norm() <= f64::EPSILON * (np * nq).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate columns (p, q) to diagonalize [[np, g], [g*, nq]]
                let abs = g.norm();
                let phase = g / abs;
                let tau = (nq - np) / (2.0 * abs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let s = phase * (t * cth);
                for i in 0..rows {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * cth + aiq * s.conj();
                    a[(i, q)] = -aip * s + aiq * cth;
                }
                norms2[p] = (0..rows).map(|i| a[(i, p)].norm_sqr()).sum();
                norms2[q] = (0..rows).map(|i| a[(i, q)].norm_sqr()).sum();
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = norms2.into_iter().map(|x| x.sqrt()).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Operator norm: the largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Number of singular values above `rel_tol * sigma_max`.
pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Kronecker product, row-major factor conventions (left factor major).
pub fn kronecker(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Frobenius norm.
pub fn fro_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dominant left singular vector by power iteration on `M M*`.
///
/// Deterministic: starts from the column of largest norm. Intended for
/// numerically rank-one inputs, where convergence is immediate.
pub fn dominant_left_singular_vector(m: &CMatrix, iterations: usize) -> Vec<Complex64> {
    let rows = m.nrows();
    let mut best_col = 0usize;
    let mut best = -1.0f64;
    for j in 0..m.ncols() {
        let norm: f64 = (0..rows).map(|i| m[(i, j)].norm_sqr()).sum();
        if norm > best {
            best = norm;
            best_col = j;
        }
    }
    let mut v: Vec<Complex64> = (0..rows).map(|i| m[(i, best_col)]).collect();
    let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nrm == 0.0 {
        v[0] = C_ONE;
    } else {
        v.iter_mut().for_each(|z| *z /= nrm);
    }
    for _ in 0..iterations {
        // w = M* v ; v = M w, renormalized
        let mut w = vec![C_ZERO; m.ncols()];
        for j in 0..m.ncols() {
            let mut acc = C_ZERO;
            for i in 0..rows {
                acc += m[(i, j)].conj() * v[i];
            }
            w[j] = acc;
        }
        let mut nv = vec![C_ZERO; rows];
        for i in 0..rows {
            let mut acc = C_ZERO;
            for j in 0..m.ncols() {
                acc += m[(i, j)] * w[j];
            }
            nv[i] = acc;
        }
        let nrm = nv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm == 0.0 {
            break;
        }
        nv.iter_mut().for_each(|z| *z /= nrm);
        v = nv;
    }
    v
}
