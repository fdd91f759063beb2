//! Crossed-product matrix models and their numerical verification.
//!
//! A sample point of the sphere model is a `K`-tuple `x = (x_0, …, x_{K-1})`
//! of unit vectors in `C^N`; the coordinate `z_i` evaluates to the cyclic
//! band matrix `Σ_c (x_c)_i E_{c,c+1}` (column index mod `K`) and `z_i^*` to
//! its conjugate transpose, extended multiplicatively to words and linearly
//! to polynomials. Quantum-group coordinates `u_{ij}` evaluate analogously
//! over a `K`-tuple of `N x N` unitaries, `u_{ij} ↦ Σ_c (g_c)_{ij} E_{c,c+1}`.

mod banded;
mod commutant;
mod linalg;
pub mod reference;
mod sample;
mod verify;

pub use commutant::{commutant_dimension, irrep_point};
pub use linalg::{
    dominant_left_singular_vector, fro_norm, hermitian_eigenvalues, identity, kronecker,
    numerical_rank, operator_norm, singular_values, CMatrix,
};
pub use sample::{
    restrict_sampler, sample_haar_unitary, sample_sphere_point, substream, substream_seed,
    DiagonalSphereSampler, HaarUnitarySampler, RestrictedSampler, Sampler, SphereProductSampler,
};
pub use verify::{check_model_identity, verify_relations, RelationCheck, VerificationReport};

pub(crate) use banded::Banded;

use num_complex::Complex64;
use thiserror::Error;

use crate::ncalg::{Generator, Letter, Polynomial, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("letter kind does not match the sample point: {0}")]
    LetterKind(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("phases must be pairwise distinct")]
    RepeatedPhases,
    #[error("phases must be unimodular")]
    NonUnimodularPhase,
    #[error("irreducible point construction needs N >= 2, got {0}")]
    AmbientTooSmall(u32),
    #[error("commutant of an empty matrix set is undetermined")]
    EmptyMatrixSet,
    #[error("matrices must all be square of equal dimension")]
    MixedDimensions,
    #[error("rejection sampler exceeded {attempts} attempts; acceptance rate below floor")]
    LowAcceptance { attempts: u64 },
    #[error("restriction predicate is not invariant under the cyclic shift")]
    NotShiftInvariant,
    #[error("sample count must be at least {needed}, got {got}")]
    TooFewSamples { needed: u64, got: u64 },
}

/// A point of `(S^{N-1}_C)^K`: `K` unit vectors in `C^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    vectors: Vec<Vec<Complex64>>,
}

impl SamplePoint {
    /// Validates shape and unit norms (within `1e-12`).
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self, ModelError> {
        if vectors.is_empty() {
            return Err(ModelError::InvalidPoint("empty tuple".into()));
        }
        let n = vectors[0].len();
        if n == 0 {
            return Err(ModelError::InvalidPoint("zero-dimensional vector".into()));
        }
        for v in &vectors {
            if v.len() != n {
                return Err(ModelError::InvalidPoint(
                    "tuple entries of unequal length".into(),
                ));
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-12 {
                return Err(ModelError::InvalidPoint(format!(
                    "vector norm {norm} not within 1e-12 of 1"
                )));
            }
        }
        Ok(SamplePoint { vectors })
    }

    pub fn n(&self) -> usize {
        self.vectors[0].len()
    }

    pub fn k(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    /// Coordinate `(x_c)_i`, with `i` 1-based.
    pub fn coordinate(&self, c: usize, i: u32) -> Complex64 {
        self.vectors[c][(i - 1) as usize]
    }

    /// The cyclic shift `(x_0, …, x_{K-1}) ↦ (x_{K-1}, x_0, …, x_{K-2})`.
    pub fn cyclic_shift(&self) -> SamplePoint {
        let k = self.k();
        let mut vectors = Vec::with_capacity(k);
        vectors.push(self.vectors[k - 1].clone());
        vectors.extend_from_slice(&self.vectors[..k - 1]);
        SamplePoint { vectors }
    }
}

/// A point of `U_N^K`: `K` unitary `N x N` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryTuple {
    unitaries: Vec<CMatrix>,
}

impl UnitaryTuple {
    /// Validates squareness and unitarity (within `1e-10`).
    pub fn new(unitaries: Vec<CMatrix>) -> Result<Self, ModelError> {
        if unitaries.is_empty() {
            return Err(ModelError::InvalidPoint("empty tuple".into()));
        }
        let n = unitaries[0].nrows();
        for g in &unitaries {
            if g.nrows() != n || g.ncols() != n {
                return Err(ModelError::InvalidPoint(
                    "tuple entries of unequal size".into(),
                ));
            }
            let res = g * g.adjoint() - identity(n);
            if fro_norm(&res) > 1e-10 {
                return Err(ModelError::InvalidPoint(format!(
                    "matrix fails unitarity by {}",
                    fro_norm(&res)
                )));
            }
        }
        Ok(UnitaryTuple { unitaries })
    }

    pub fn n(&self) -> usize {
        self.unitaries[0].nrows()
    }

    pub fn k(&self) -> usize {
        self.unitaries.len()
    }

    pub fn unitaries(&self) -> &[CMatrix] {
        &self.unitaries
    }

    /// Entry `(g_c)_{ij}`, indices 1-based.
    pub fn entry(&self, c: usize, i: u32, j: u32) -> Complex64 {
        self.unitaries[c][((i - 1) as usize, (j - 1) as usize)]
    }
}

/// A sample of whichever model a sampler produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    Sphere(SamplePoint),
    Unitaries(UnitaryTuple),
}

impl Point {
    pub fn n(&self) -> usize {
        match self {
            Point::Sphere(x) => x.n(),
            Point::Unitaries(g) => g.n(),
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Point::Sphere(x) => x.k(),
            Point::Unitaries(g) => g.k(),
        }
    }
}

pub(crate) fn eval_letter(l: &Letter, p: &Point) -> Result<Banded, ModelError> {
    let k = p.k();
    let unstarred = |vals: Vec<Complex64>| Banded { k, band: 1 % k, vals };
    let banded = match (l.generator, p) {
        (Generator::Sphere(i), Point::Sphere(x)) => {
            if i == 0 || i as usize > x.n() {
                return Err(ModelError::DimensionMismatch(format!(
                    "letter z{i} outside ambient dimension {}",
                    x.n()
                )));
            }
            unstarred((0..k).map(|c| x.coordinate(c, i)).collect())
        }
        (Generator::Entry(i, j), Point::Unitaries(g)) => {
            if i == 0 || j == 0 || i as usize > g.n() || j as usize > g.n() {
                return Err(ModelError::DimensionMismatch(format!(
                    "letter u{i},{j} outside ambient dimension {}",
                    g.n()
                )));
            }
            unstarred((0..k).map(|c| g.entry(c, i, j)).collect())
        }
        (Generator::Sphere(_), Point::Unitaries(_)) => {
            return Err(ModelError::LetterKind(
                "sphere letter against a unitary tuple".into(),
            ))
        }
        (Generator::Entry(_, _), Point::Sphere(_)) => {
            return Err(ModelError::LetterKind(
                "matrix-entry letter against a sphere point".into(),
            ))
        }
    };
    Ok(if l.starred { banded.adjoint() } else { banded })
}

/// Word evaluation in band form; splits in halves so that the evaluation of
/// an adjoint word mirrors the evaluation of the word.
pub(crate) fn eval_word_banded(letters: &[Letter], p: &Point) -> Result<Banded, ModelError> {
    match letters.len() {
        0 => Ok(Banded::identity(p.k())),
        1 => eval_letter(&letters[0], p),
        n => {
            let (a, b) = letters.split_at(n / 2);
            Ok(eval_word_banded(a, p)?.mul(&eval_word_banded(b, p)?))
        }
    }
}

/// Evaluate a word at a point of either model.
pub fn eval_word_at(w: &Word, p: &Point) -> Result<CMatrix, ModelError> {
    Ok(eval_word_banded(&w.letters, p)?.to_dense())
}

/// Evaluate a word through the sphere model: a `K x K` matrix.
pub fn eval_word(w: &Word, x: &SamplePoint) -> Result<CMatrix, ModelError> {
    eval_word_at(w, &Point::Sphere(x.clone()))
}

/// Evaluate a word of matrix-entry letters through the quantum-group model.
pub fn qg_eval(w: &Word, g: &UnitaryTuple) -> Result<CMatrix, ModelError> {
    eval_word_at(w, &Point::Unitaries(g.clone()))
}

/// Linear extension of word evaluation.
pub fn eval_poly_at(p: &Polynomial, pt: &Point) -> Result<CMatrix, ModelError> {
    let k = pt.k();
    let mut acc = CMatrix::zeros(k, k);
    for (w, c) in p.terms() {
        let b = eval_word_banded(&w.letters, pt)?;
        for row in 0..k {
            acc[(row, (row + b.band) % k)] += c * b.vals[row];
        }
    }
    Ok(acc)
}

/// Evaluate a polynomial through the sphere model.
pub fn eval_poly(p: &Polynomial, x: &SamplePoint) -> Result<CMatrix, ModelError> {
    eval_poly_at(p, &Point::Sphere(x.clone()))
}

/// Assemble the full fundamental matrix `U(g)` of the quantum-group model:
/// the `NK x NK` matrix with `K x K` blocks `ρ_g(u_{ij})`, row index
/// `(i-1)K + c`, column index `(j-1)K + c'`.
pub fn assemble_fundamental(g: &UnitaryTuple) -> CMatrix {
    let n = g.n();
    let k = g.k();
    let mut u = CMatrix::zeros(n * k, n * k);
    for i in 0..n {
        for j in 0..n {
            for c in 0..k {
                u[(i * k + c, j * k + (c + 1) % k)] = g.unitaries[c][(i, j)];
            }
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::commutator;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn witness_point() -> SamplePoint {
        // x = ((1,0), (0,1))
        SamplePoint::new(vec![
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn coordinates_evaluate_to_matrix_units_at_the_witness_point() {
        let x = witness_point();
        let z1 = eval_word(&Word::new(vec![Letter::z(1)]), &x).unwrap();
        let z2 = eval_word(&Word::new(vec![Letter::z(2)]), &x).unwrap();
        let mut e01 = CMatrix::zeros(2, 2);
        e01[(0, 1)] = c(1.0, 0.0);
        let mut e10 = CMatrix::zeros(2, 2);
        e10[(1, 0)] = c(1.0, 0.0);
        assert_eq!(z1, e01);
        assert_eq!(z2, e10);
    }

    #[test]
    fn unit_word_gives_identity_and_adjoint_gives_dagger() {
        let x = witness_point();
        assert_eq!(eval_word(&Word::unit(), &x).unwrap(), identity(2));
        let w = Word::new(vec![Letter::z(1), Letter::z_star(2), Letter::z(1)]);
        let m = eval_word(&w, &x).unwrap();
        let ma = eval_word(&w.adjoint(), &x).unwrap();
        assert_eq!(ma, m.adjoint());
    }

    #[test]
    fn classical_commutator_fails_at_the_witness_point() {
        let x = witness_point();
        let comm = commutator(
            &Polynomial::from_letters(&[Letter::z(1)]),
            &Polynomial::from_letters(&[Letter::z(2)]),
        );
        let m = eval_poly(&comm, &x).unwrap();
        // [E01, E10] = E00 - E11, operator norm 1
        assert!((operator_norm(&m) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn k1_evaluation_is_scalar() {
        let x = SamplePoint::new(vec![vec![c(0.6, 0.0), c(0.0, 0.8)]]).unwrap();
        let m = eval_word(&Word::new(vec![Letter::z(2)]), &x).unwrap();
        assert_eq!(m.nrows(), 1);
        assert_eq!(m[(0, 0)], c(0.0, 0.8));
    }

    #[test]
    fn poly_evaluation_is_linear() {
        let x = witness_point();
        let p = &Polynomial::from_letters(&[Letter::z(1)])
            - &Polynomial::from_letters(&[Letter::z(1)]);
        assert_eq!(eval_poly(&p, &x).unwrap(), CMatrix::zeros(2, 2));
        assert_eq!(eval_poly(&Polynomial::one(), &x).unwrap(), identity(2));
    }

    #[test]
    fn mismatched_letters_are_rejected() {
        let x = witness_point();
        assert!(matches!(
            eval_word(&Word::new(vec![Letter::z(3)]), &x),
            Err(ModelError::DimensionMismatch(_))
        ));
        assert!(matches!(
            eval_word(&Word::new(vec![Letter::u(1, 1)]), &x),
            Err(ModelError::LetterKind(_))
        ));
    }

    #[test]
    fn qg_scalar_case_and_fundamental_unitarity() {
        let theta = 0.7f64;
        let g = UnitaryTuple::new(vec![CMatrix::from_row_slice(
            1,
            1,
            &[Complex64::from_polar(1.0, theta)],
        )])
        .unwrap();
        let m = qg_eval(&Word::new(vec![Letter::u(1, 1)]), &g).unwrap();
        assert!((m[(0, 0)] - Complex64::from_polar(1.0, theta)).norm() < 1e-15);

        let u = assemble_fundamental(&g);
        assert!(fro_norm(&(&u * u.adjoint() - identity(1))) < 1e-12);
    }

    #[test]
    fn sample_point_invariants_are_enforced() {
        assert!(SamplePoint::new(vec![vec![c(1.0, 0.0), c(1.0, 0.0)]]).is_err());
        assert!(SamplePoint::new(vec![]).is_err());
        assert!(SamplePoint::new(vec![vec![c(1.0, 0.0)], vec![c(0.5, 0.0), c(0.5, 0.0)]]).is_err());
    }

    #[test]
    fn unitary_tuple_invariants_are_enforced() {
        let not_unitary = CMatrix::from_row_slice(1, 1, &[c(0.5, 0.0)]);
        assert!(UnitaryTuple::new(vec![not_unitary]).is_err());
    }

    #[test]
    fn cyclic_shift_rotates_the_tuple() {
        let x = witness_point();
        let y = x.cyclic_shift();
        assert_eq!(y.vectors()[0], x.vectors()[1]);
        assert_eq!(y.vectors()[1], x.vectors()[0]);
    }
}
