//! Cyclic band matrices.
//!
//! Every generator of the crossed-product models evaluates to a matrix
//! supported on a single cyclic off-diagonal, `A = Σ_c a_c E_{c,c+b}`
//! (column index mod `K`), and products of such matrices stay on a single
//! band. Working with the band representation keeps word evaluation at
//! `K` scalar multiplications per letter and makes operator norms of
//! band-homogeneous polynomials exact: the singular values of a band
//! matrix are the moduli of its entries.

use num_complex::Complex64;

use super::linalg::{CMatrix, C_ZERO};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Banded {
    pub k: usize,
    /// Band offset: entry `(c, (c + band) % k)` holds `vals[c]`.
    pub band: usize,
    pub vals: Vec<Complex64>,
}

impl Banded {
    pub fn identity(k: usize) -> Self {
        Banded {
            k,
            band: 0,
            vals: vec![Complex64::new(1.0, 0.0); k],
        }
    }

    pub fn mul(&self, other: &Banded) -> Banded {
        debug_assert_eq!(self.k, other.k);
        let k = self.k;
        let band = (self.band + other.band) % k;
        let vals = (0..k)
            .map(|c| self.vals[c] * other.vals[(c + self.band) % k])
            .collect();
        Banded { k, band, vals }
    }

    pub fn adjoint(&self) -> Banded {
        let k = self.k;
        let band = (k - self.band) % k;
        let mut vals = vec![C_ZERO; k];
        for c in 0..k {
            // entry (c, c+band) of A* is conj of entry (c+band, c+band+old) = (c+band, c)
            vals[(c + self.band) % k] = self.vals[c].conj();
        }
        Banded { k, band, vals }
    }

    pub fn to_dense(&self) -> CMatrix {
        let k = self.k;
        let mut m = CMatrix::zeros(k, k);
        for c in 0..k {
            m[(c, (c + self.band) % k)] = self.vals[c];
        }
        m
    }

    /// Trace: zero unless the band is the main diagonal.
    pub fn trace(&self) -> Complex64 {
        if self.band == 0 || self.k == 0 {
            self.vals.iter().sum()
        } else {
            C_ZERO
        }
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_shifts_bands_and_indices() {
        // A = a0 E01 + a1 E10 (k=2, band 1); B same shape.
        let a = Banded {
            k: 2,
            band: 1,
            vals: vec![c(2.0, 0.0), c(3.0, 0.0)],
        };
        let b = Banded {
            k: 2,
            band: 1,
            vals: vec![c(5.0, 0.0), c(7.0, 0.0)],
        };
        let ab = a.mul(&b);
        assert_eq!(ab.band, 0);
        // (AB)_{00} = a0 * b1, (AB)_{11} = a1 * b0
        assert_eq!(ab.vals[0], c(14.0, 0.0));
        assert_eq!(ab.vals[1], c(15.0, 0.0));
        let dense = a.to_dense() * b.to_dense();
        assert_eq!(ab.to_dense(), dense);
    }

    #[test]
    fn adjoint_matches_dense_adjoint() {
        let a = Banded {
            k: 3,
            band: 1,
            vals: vec![c(1.0, 2.0), c(-0.5, 0.25), c(0.0, -1.0)],
        };
        assert_eq!(a.adjoint().to_dense(), a.to_dense().adjoint());
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn k1_collapses_to_scalars() {
        let a = Banded {
            k: 1,
            band: 0,
            vals: vec![c(0.0, 1.0)],
        };
        let b = a.mul(&a);
        assert_eq!(b.vals[0], c(-1.0, 0.0));
        assert_eq!(a.adjoint().vals[0], c(0.0, -1.0));
    }
}
