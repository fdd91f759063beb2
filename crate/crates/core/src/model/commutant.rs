//! Commutant dimension and explicit irreducible points.

use num_complex::Complex64;

use super::linalg::{kronecker, numerical_rank, CMatrix};
use super::{ModelError, SamplePoint};

/// Dimension of `{Y : YA = AY and YA* = A*Y for all A}`.
///
/// Stacks the linear systems `(A^T ⊗ I - I ⊗ A) vec(Y) = 0` for every `A`
/// and its adjoint, and returns the null-space dimension with singular
/// values below `tol * sigma_max` treated as zero.
pub fn commutant_dimension(mats: &[CMatrix], tol: f64) -> Result<usize, ModelError> {
    if mats.is_empty() {
        return Err(ModelError::EmptyMatrixSet);
    }
    let d = mats[0].nrows();
    for m in mats {
        if m.nrows() != d || m.ncols() != d {
            return Err(ModelError::MixedDimensions);
        }
    }
    let eye = CMatrix::identity(d, d);
    let rows_per = d * d;
    let mut stacked = CMatrix::zeros(2 * mats.len() * rows_per, rows_per);
    let mut offset = 0usize;
    for a in mats {
        for m in [a.clone(), a.adjoint()] {
            let block = kronecker(&m.transpose(), &eye) - kronecker(&eye, &m);
            stacked.view_mut((offset, 0), (rows_per, rows_per)).copy_from(&block);
            offset += rows_per;
        }
    }
    let rank = numerical_rank(&stacked, tol);
    Ok(rows_per - rank)
}

/// The sample point whose evaluation of `z_1, z_2` has scalar commutant:
/// first coordinate `1/sqrt(N)`, second coordinate `ξ_c/sqrt(N)` with
/// pairwise distinct unimodular `ξ_c`, remaining mass on the third
/// coordinate as a positive real.
///
/// When `phases` is `None` the `ξ_c` are the `K`-th roots of `i`.
pub fn irrep_point(
    n: u32,
    k: u32,
    phases: Option<&[Complex64]>,
) -> Result<SamplePoint, ModelError> {
    if n < 2 {
        return Err(ModelError::AmbientTooSmall(n));
    }
    let k = k.max(1) as usize;
    let xs: Vec<Complex64> = match phases {
        Some(p) => {
            if p.len() != k {
                return Err(ModelError::InvalidPoint(format!(
                    "need {k} phases, got {}",
                    p.len()
                )));
            }
            p.to_vec()
        }
        None => (0..k)
            .map(|c| {
                Complex64::from_polar(
                    1.0,
                    (std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * c as f64)
                        / k as f64,
                )
            })
            .collect(),
    };
    for x in &xs {
        if (x.norm() - 1.0).abs() > 1e-9 {
            return Err(ModelError::NonUnimodularPhase);
        }
    }
    for a in 0..xs.len() {
        for b in (a + 1)..xs.len() {
            if (xs[a] - xs[b]).norm() < 1e-9 {
                return Err(ModelError::RepeatedPhases);
            }
        }
    }
    let root_n = (n as f64).sqrt();
    let tail = if n > 2 {
        (1.0 - 2.0 / n as f64).sqrt()
    } else {
        0.0
    };
    let vectors: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|xi| {
            let mut v = vec![Complex64::new(0.0, 0.0); n as usize];
            v[0] = Complex64::new(1.0 / root_n, 0.0);
            v[1] = xi / root_n;
            if n > 2 {
                v[2] = Complex64::new(tail, 0.0);
            }
            v
        })
        .collect();
    SamplePoint::new(vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{eval_word, identity};
    use crate::ncalg::{Letter, Word};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_full_commutant() {
        assert_eq!(commutant_dimension(&[identity(3)], 1e-9).unwrap(), 9);
    }

    #[test]
    fn matrix_units_have_scalar_commutant() {
        let mut e01 = CMatrix::zeros(2, 2);
        e01[(0, 1)] = c(1.0, 0.0);
        let mut e10 = CMatrix::zeros(2, 2);
        e10[(1, 0)] = c(1.0, 0.0);
        assert_eq!(commutant_dimension(&[e01, e10], 1e-9).unwrap(), 1);
    }

    #[test]
    fn direct_sum_of_two_inequivalent_characters_has_commutant_two() {
        // diag(1, 2) generates the diagonal algebra; its commutant is the
        // diagonal, dimension 2.
        let a = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(commutant_dimension(&[a], 1e-9).unwrap(), 2);
    }

    #[test]
    fn empty_set_is_an_error() {
        assert!(matches!(
            commutant_dimension(&[], 1e-9),
            Err(ModelError::EmptyMatrixSet)
        ));
    }

    #[test]
    fn irrep_point_has_scalar_commutant() {
        for (n, k) in [(2u32, 2u32), (2, 5), (3, 3)] {
            let x = irrep_point(n, k, None).unwrap();
            let a1 = eval_word(&Word::new(vec![Letter::z(1)]), &x).unwrap();
            let a2 = eval_word(&Word::new(vec![Letter::z(2)]), &x).unwrap();
            assert_eq!(
                commutant_dimension(&[a1, a2], 1e-9).unwrap(),
                1,
                "N={n}, K={k}"
            );
        }
    }

    #[test]
    fn explicit_phase_pair_works_and_duplicates_fail() {
        let x = irrep_point(2, 2, Some(&[c(1.0, 0.0), c(-1.0, 0.0)])).unwrap();
        let a1 = eval_word(&Word::new(vec![Letter::z(1)]), &x).unwrap();
        let a2 = eval_word(&Word::new(vec![Letter::z(2)]), &x).unwrap();
        assert_eq!(commutant_dimension(&[a1, a2], 1e-9).unwrap(), 1);

        assert!(matches!(
            irrep_point(2, 2, Some(&[c(1.0, 0.0), c(1.0, 0.0)])),
            Err(ModelError::RepeatedPhases)
        ));
        assert!(matches!(
            irrep_point(2, 2, Some(&[c(2.0, 0.0), c(1.0, 0.0)])),
            Err(ModelError::NonUnimodularPhase)
        ));
        assert!(matches!(
            irrep_point(1, 2, None),
            Err(ModelError::AmbientTooSmall(1))
        ));
    }
}
