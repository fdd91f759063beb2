//! Rank-one tensor machinery.
//!
//! A tensor `r ∈ (C^N)^{⊗K}` is pure (rank one) exactly when its
//! coefficients satisfy the quadratic exchange equations
//! `r_a r_b = r_{a'} r_{b'}` whenever `(a', b')` is obtained from `(a, b)`
//! by swapping the entries in one slot. Single-slot swaps generate all
//! multiset-preserving exchanges, so the purity residual enumerates only
//! those; an independent check reshapes the tensor along every sequential
//! slot split and asks for numerical rank one.
//!
//! Unit pure tensors factor as `v_1 ⊗ … ⊗ v_K` uniquely up to a torus of
//! phases with product one; `factorize` pins that gauge by making the first
//! coordinate of modulus above `1e-10` of each factor except the last a
//! positive real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    dominant_left_singular_vector, numerical_rank, substream, CMatrix, SamplePoint,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("coefficient count {got} does not match N^K = {expected}")]
    ShapeMismatch { got: usize, expected: usize },
    #[error("tensor parameters must satisfy N >= 1, K >= 1")]
    BadParameters,
    #[error("tensor is not a unit pure tensor within tolerance {0}")]
    NotPure(f64),
    #[error("vectors must be unit and of equal dimension")]
    BadVectors,
    #[error("entries must be finite")]
    NonFinite,
}

/// Dense tensor of shape `[1,N]^K`, coefficients row-major with the first
/// index most significant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub data: Vec<Complex64>,
}

impl Tensor {
    pub fn new(n: u32, k: u32, data: Vec<Complex64>) -> Result<Self, TensorError> {
        if n < 1 || k < 1 {
            return Err(TensorError::BadParameters);
        }
        let expected = (n as usize).pow(k);
        if data.len() != expected {
            return Err(TensorError::ShapeMismatch {
                got: data.len(),
                expected,
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(TensorError::NonFinite);
        }
        Ok(Tensor { n, k, data })
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coefficient at a 1-based multi-index.
    pub fn coefficient(&self, idx: &[u32]) -> Complex64 {
        let n = self.n as usize;
        let off = idx.iter().fold(0, |acc, &i| acc * n + (i - 1) as usize);
        self.data[off]
    }

    /// Reshape into an `N^split x N^(K-split)` matrix along a slot split.
    fn reshape(&self, split: u32) -> CMatrix {
        let n = self.n as usize;
        let rows = n.pow(split);
        let cols = n.pow(self.k - split);
        CMatrix::from_fn(rows, cols, |r, c| self.data[r * cols + c])
    }
}

/// Maximum absolute violation of the single-slot exchange equations.
///
/// Exhaustive over all ordered pairs of multi-indices when `N^K <= 4096`;
/// beyond that, `10^4` pairs per slot are drawn from a fixed internal
/// stream, so the residual is still a pure function of the tensor.
pub fn segre_residual(t: &Tensor) -> f64 {
    let n = t.n as usize;
    let size = t.data.len();
    let k = t.k as usize;
    let mut worst = 0.0f64;
    let mut check = |a: usize, b: usize, slot: usize| {
        let stride = n.pow((k - 1 - slot) as u32);
        let da = (a / stride) % n;
        let db = (b / stride) % n;
        if da == db {
            return;
        }
        let a2 = a - da * stride + db * stride;
        let b2 = b - db * stride + da * stride;
        let v = (t.data[a] * t.data[b] - t.data[a2] * t.data[b2]).norm();
        if v > worst {
            worst = v;
        }
    };
    if size <= 4096 {
        for slot in 0..k {
            for a in 0..size {
                for b in 0..size {
                    check(a, b, slot);
                }
            }
        }
    } else {
        use rand::Rng;
        let mut rng = substream(0x5e97e, 0);
        for slot in 0..k {
            for _ in 0..10_000 {
                let a = rng.random_range(0..size);
                let b = rng.random_range(0..size);
                check(a, b, slot);
            }
        }
    }
    worst
}

/// Unit pure tensor test: exchange-equation residual and norm both within
/// `tol`.
pub fn is_pure_unit(t: &Tensor, tol: f64) -> bool {
    segre_residual(t) < tol && (t.norm() - 1.0).abs() < tol
}

/// Independent purity check: every sequential slot split reshapes to a
/// matrix of numerical rank one (relative cutoff `tol`).
pub fn rank_one_oracle(t: &Tensor, tol: f64) -> bool {
    if t.norm() == 0.0 {
        return false;
    }
    (1..t.k).all(|split| numerical_rank(&t.reshape(split), tol) <= 1)
}

/// Outer product of unit vectors.
pub fn tensor_of(vectors: &[Vec<Complex64>]) -> Result<Tensor, TensorError> {
    if vectors.is_empty() {
        return Err(TensorError::BadVectors);
    }
    let n = vectors[0].len();
    if n == 0 {
        return Err(TensorError::BadVectors);
    }
    for v in vectors {
        if v.len() != n {
            return Err(TensorError::BadVectors);
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(TensorError::BadVectors);
        }
    }
    let k = vectors.len();
    let size = n.pow(k as u32);
    let mut data = vec![Complex64::new(1.0, 0.0); size];
    for (off, entry) in data.iter_mut().enumerate() {
        let mut rem = off;
        let mut acc = Complex64::new(1.0, 0.0);
        for slot in (0..k).rev() {
            let i = rem % n;
            rem /= n;
            acc *= vectors[slot][i];
        }
        *entry = acc;
    }
    Tensor::new(n as u32, k as u32, data)
}

/// Phase-fix a unit vector in place: the first coordinate of modulus above
/// `1e-10` becomes a positive real.
fn gauge_fix(v: &mut [Complex64]) {
    let lead = v.iter().find(|z| z.norm() > 1e-10);
    let phase = match lead {
        Some(z) => z / z.norm(),
        None => Complex64::new(1.0, 0.0),
    };
    let conj = phase.conj();
    v.iter_mut().for_each(|z| *z *= conj);
}

/// Split a unit pure tensor into `K` unit vectors, gauge-fixed: every
/// factor except the last has positive-real leading coordinate, the last
/// absorbs the residual phase. Errors when the input is not a unit pure
/// tensor within `tol`.
pub fn factorize(t: &Tensor, tol: f64) -> Result<Vec<Vec<Complex64>>, TensorError> {
    if !is_pure_unit(t, tol) {
        return Err(TensorError::NotPure(tol));
    }
    let n = t.n as usize;
    let mut vectors = Vec::with_capacity(t.k as usize);
    let mut rest = t.clone();
    while rest.k > 1 {
        let m = rest.reshape(1);
        let mut v = dominant_left_singular_vector(&m, 50);
        gauge_fix(&mut v);
        // contract the extracted factor away
        let cols = m.ncols();
        let mut next = vec![Complex64::new(0.0, 0.0); cols];
        for (col, entry) in next.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                acc += v[r].conj() * m[(r, col)];
            }
            *entry = acc;
        }
        let norm = next.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        next.iter_mut().for_each(|z| *z /= norm);
        vectors.push(v);
        rest = Tensor::new(rest.n, rest.k - 1, next)?;
    }
    let mut last = rest.data;
    let norm = last.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    last.iter_mut().for_each(|z| *z /= norm);
    vectors.push(last);
    Ok(vectors)
}

/// Cyclic coefficient shift: the `K`-fold iterate is the identity, and on
/// pure tensors `v_1 ⊗ … ⊗ v_K ↦ v_K ⊗ v_1 ⊗ … ⊗ v_{K-1}`.
pub fn cyclic_shift(t: &Tensor) -> Tensor {
    let n = t.n as usize;
    let k = t.k as usize;
    let size = t.data.len();
    let mut data = vec![Complex64::new(0.0, 0.0); size];
    let lead_stride = n.pow((k - 1) as u32);
    for (off, entry) in data.iter_mut().enumerate() {
        // new index (i_1, i_2, …, i_K) reads old index (i_2, …, i_K, i_1)
        let i1 = off / lead_stride;
        let tail = off % lead_stride;
        *entry = t.data[tail * n + i1];
    }
    Tensor {
        n: t.n,
        k: t.k,
        data,
    }
}

/// Coefficient evaluation at a sample point:
/// `(i_1, …, i_K) ↦ (x_0)_{i_1} (x_1)_{i_2} … (x_{K-1})_{i_K}`.
pub fn psi_eval(indices: &[u32], x: &SamplePoint) -> Complex64 {
    assert_eq!(indices.len(), x.k(), "index tuple must have K entries");
    let mut acc = Complex64::new(1.0, 0.0);
    for (c, &i) in indices.iter().enumerate() {
        acc *= x.coordinate(c, i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(n: usize, i: usize) -> Vec<Complex64> {
        let mut v = vec![c(0.0, 0.0); n];
        v[i] = c(1.0, 0.0);
        v
    }

    fn random_unit(n: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Complex64> {
        use rand::Rng;
        loop {
            let v: Vec<Complex64> = (0..n)
                .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-3 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    #[test]
    fn basis_tensors_are_pure() {
        let t = tensor_of(&[basis(2, 0), basis(2, 1), basis(2, 0)]).unwrap();
        assert_eq!(segre_residual(&t), 0.0);
        assert!(is_pure_unit(&t, 1e-12));
        assert!(rank_one_oracle(&t, 1e-9));
    }

    #[test]
    fn entangled_pair_has_residual_one_half() {
        let s = 1.0 / 2.0f64.sqrt();
        let t = Tensor::new(2, 2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        assert!((segre_residual(&t) - 0.5).abs() < 1e-15);
        assert!(!is_pure_unit(&t, 1e-6));
        assert!(!rank_one_oracle(&t, 1e-9));
    }

    #[test]
    fn scaling_breaks_unit_purity_via_the_norm() {
        let mut t = tensor_of(&[basis(2, 0), basis(2, 0)]).unwrap();
        t.data.iter_mut().for_each(|z| *z *= 2.0);
        assert_eq!(segre_residual(&t), 0.0);
        assert!(!is_pure_unit(&t, 1e-6));
    }

    #[test]
    fn roundtrip_of_random_pure_tensors_is_tiny() {
        let mut rng = substream(90, 0);
        let vs: Vec<Vec<Complex64>> = (0..4).map(|_| random_unit(2, &mut rng)).collect();
        let t = tensor_of(&vs).unwrap();
        assert!(segre_residual(&t) < 1e-12);
    }

    #[test]
    fn factorize_recovers_basis_vectors() {
        let t = tensor_of(&[basis(2, 0), basis(2, 1), basis(2, 0)]).unwrap();
        let vs = factorize(&t, 1e-9).unwrap();
        assert_eq!(vs, vec![basis(2, 0), basis(2, 1), basis(2, 0)]);
    }

    #[test]
    fn factorize_roundtrips_on_random_pure_tensors() {
        let mut rng = substream(91, 0);
        for _ in 0..25 {
            let vs: Vec<Vec<Complex64>> = (0..3).map(|_| random_unit(3, &mut rng)).collect();
            let t = tensor_of(&vs).unwrap();
            let fs = factorize(&t, 1e-8).unwrap();
            let back = tensor_of(&fs).unwrap();
            let err: f64 = t
                .data
                .iter()
                .zip(&back.data)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(err < 1e-10, "roundtrip error {err}");
        }
    }

    #[test]
    fn gauge_orbits_factor_identically() {
        let mut rng = substream(92, 0);
        let vs: Vec<Vec<Complex64>> = (0..3).map(|_| random_unit(2, &mut rng)).collect();
        // phases with product one act trivially on the tensor
        let phases = [
            Complex64::from_polar(1.0, 0.9),
            Complex64::from_polar(1.0, -0.4),
            Complex64::from_polar(1.0, -0.5),
        ];
        let twisted: Vec<Vec<Complex64>> = vs
            .iter()
            .zip(&phases)
            .map(|(v, p)| v.iter().map(|z| z * p).collect())
            .collect();
        let f1 = factorize(&tensor_of(&vs).unwrap(), 1e-8).unwrap();
        let f2 = factorize(&tensor_of(&twisted).unwrap(), 1e-8).unwrap();
        for (a, b) in f1.iter().zip(&f2) {
            let diff: f64 = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(diff < 1e-10, "gauge-fixed factors differ by {diff}");
        }
    }

    #[test]
    fn factorize_rejects_entangled_input() {
        let s = 1.0 / 2.0f64.sqrt();
        let t = Tensor::new(2, 2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
        assert!(matches!(factorize(&t, 1e-6), Err(TensorError::NotPure(_))));
    }

    #[test]
    fn cyclic_shift_transposes_matrices_and_has_period_k() {
        let t = Tensor::new(
            2,
            2,
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)],
        )
        .unwrap();
        let s = cyclic_shift(&t);
        assert_eq!(
            s.data,
            vec![c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]
        );

        let mut rng = substream(93, 0);
        use rand::Rng;
        let data: Vec<Complex64> = (0..27).map(|_| c(rng.random(), rng.random())).collect();
        let t = Tensor::new(3, 3, data).unwrap();
        let mut s = t.clone();
        for _ in 0..3 {
            s = cyclic_shift(&s);
        }
        assert_eq!(s, t);
        assert!((cyclic_shift(&t).norm() - t.norm()).abs() < 1e-15);
    }

    #[test]
    fn cyclic_shift_rotates_pure_factors() {
        let mut rng = substream(94, 0);
        let vs: Vec<Vec<Complex64>> = (0..3).map(|_| random_unit(2, &mut rng)).collect();
        let t = tensor_of(&vs).unwrap();
        let rotated = tensor_of(&[vs[2].clone(), vs[0].clone(), vs[1].clone()]).unwrap();
        let shifted = cyclic_shift(&t);
        let err: f64 = shifted
            .data
            .iter()
            .zip(&rotated.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-14);
    }

    #[test]
    fn psi_eval_matches_direct_products() {
        let x = SamplePoint::new(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(psi_eval(&[1, 2], &x), c(1.0, 0.0));
        assert_eq!(psi_eval(&[2, 2], &x), c(0.0, 0.0));
        let y = SamplePoint::new(vec![vec![c(0.6, 0.0), c(0.0, 0.8)]]).unwrap();
        assert_eq!(psi_eval(&[2], &y), c(0.0, 0.8));
    }

    #[test]
    fn shape_and_finiteness_are_validated() {
        assert!(matches!(
            Tensor::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(TensorError::ShapeMismatch {
                got: 3,
                expected: 4
            })
        ));
        assert!(Tensor::new(2, 2, vec![c(f64::NAN, 0.0); 4]).is_err());
        assert!(Tensor::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn tensor_json_format_is_stable() {
        let t = Tensor::new(2, 1, vec![c(0.6, 0.0), c(0.0, -0.8)]).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"N":2,"K":1,"data":[[0.6,0.0],[0.0,-0.8]]}"#);
        let back: Tensor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
