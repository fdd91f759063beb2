//! Relation verification with operator-norm residuals.
//!
//! Every relation polynomial is evaluated at every sample; the report keeps
//! the per-relation maximum residual and the index of the sample attaining
//! it (the worst point is reproducible from the seed and that index).
//! Samples are drawn from per-index sub-streams and the maxima are merged
//! with a fixed tie rule, so parallel and serial runs agree bit for bit.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ncalg::{Letter, Polynomial, RelationSet};

use super::banded::Banded;
use super::linalg::{operator_norm, CMatrix};
use super::sample::Sampler;
use super::{eval_letter, ModelError, Point};

/// Result of checking one relation across all samples.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationCheck {
    pub text: String,
    pub max_residual: f64,
    pub argmax_sample_index: u64,
}

/// Structured result of a verification run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub space: String,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub sampler: String,
    pub relations: Vec<RelationCheck>,
    pub pass: bool,
}

/// Memoized band evaluation: sub-words produced by halving are cached per
/// sample, so families of relations sharing block factors (the preset
/// commutators all do) cost a handful of scalar products each.
struct EvalMemo<'p> {
    point: &'p Point,
    memo: HashMap<Vec<Letter>, Banded>,
}

impl<'p> EvalMemo<'p> {
    fn new(point: &'p Point) -> Self {
        EvalMemo {
            point,
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, letters: &[Letter]) -> Result<Banded, ModelError> {
        match letters.len() {
            0 => Ok(Banded::identity(self.point.k())),
            1 => eval_letter(&letters[0], self.point),
            n => {
                let (a, b) = letters.split_at(n / 2);
                let left = self.lookup(a)?;
                let right = self.lookup(b)?;
                Ok(left.mul(&right))
            }
        }
    }

    fn lookup(&mut self, letters: &[Letter]) -> Result<Banded, ModelError> {
        if let Some(b) = self.memo.get(letters) {
            return Ok(b.clone());
        }
        let b = self.eval(letters)?;
        self.memo.insert(letters.to_vec(), b.clone());
        Ok(b)
    }
}

/// Operator-norm of the evaluation of `p` at the memo's point.
///
/// Terms are accumulated per band. A band matrix has one entry per row, so
/// when all terms share a band the largest singular value is exactly the
/// largest entry modulus; otherwise the dense matrix is assembled and its
/// largest singular value computed.
fn residual(p: &Polynomial, memo: &mut EvalMemo) -> Result<f64, ModelError> {
    let k = memo.point.k();
    let mut bands: HashMap<usize, Vec<Complex64>> = HashMap::new();
    for (w, c) in p.terms() {
        let b = memo.eval(&w.letters)?;
        let acc = bands.entry(b.band).or_insert_with(|| vec![Complex64::new(0.0, 0.0); k]);
        for (row, v) in b.vals.iter().enumerate() {
            acc[row] += c * v;
        }
    }
    match bands.len() {
        0 => Ok(0.0),
        1 => {
            let vals = bands.into_values().next().unwrap();
            Ok(vals.iter().map(|z| z.norm()).fold(0.0, f64::max))
        }
        _ => {
            let mut m = CMatrix::zeros(k, k);
            for (band, vals) in bands {
                for (row, v) in vals.into_iter().enumerate() {
                    m[(row, (row + band) % k)] += v;
                }
            }
            Ok(operator_norm(&m))
        }
    }
}

/// Per-relation maximum residual over the indexed samples.
///
/// The merge keeps the larger residual, breaking ties toward the smaller
/// sample index, which makes the reduction independent of chunking.
fn max_residuals(
    relations: &[Polynomial],
    sampler: &dyn Sampler,
    n_samples: u64,
    seed: u64,
) -> Result<Vec<(f64, u64)>, ModelError> {
    let init = || vec![(0.0f64, u64::MAX); relations.len()];
    let merge_into = |acc: &mut Vec<(f64, u64)>, other: &[(f64, u64)]| {
        for (a, b) in acc.iter_mut().zip(other) {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                *a = *b;
            }
        }
    };
    (0..n_samples)
        .into_par_iter()
        .try_fold(init, |mut acc, i| {
            let point = sampler.sample_indexed(seed, i)?;
            let mut memo = EvalMemo::new(&point);
            for (r, rel) in relations.iter().enumerate() {
                let res = residual(rel, &mut memo)?;
                if res > acc[r].0 || (res == acc[r].0 && i < acc[r].1) {
                    acc[r] = (res, i);
                }
            }
            Ok(acc)
        })
        .try_reduce(init, |mut a, b| {
            merge_into(&mut a, &b);
            Ok(a)
        })
}

/// Check every relation of a preset against sampled points of a model.
pub fn verify_relations(
    rels: &RelationSet,
    sampler: &dyn Sampler,
    n_samples: u64,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport, ModelError> {
    if n_samples < 1 {
        return Err(ModelError::TooFewSamples {
            needed: 1,
            got: n_samples,
        });
    }
    let maxima = max_residuals(&rels.relations, sampler, n_samples, seed)?;
    let relations: Vec<RelationCheck> = rels
        .relations
        .iter()
        .zip(&maxima)
        .map(|(p, &(res, idx))| RelationCheck {
            text: p.to_string(),
            max_residual: res,
            argmax_sample_index: idx,
        })
        .collect();
    let pass = relations.iter().all(|r| r.max_residual < tolerance);
    let (n, k) = sampler.ambient();
    Ok(VerificationReport {
        space: rels.descriptor(),
        n,
        k,
        samples: n_samples,
        seed,
        tolerance,
        sampler: sampler.describe(),
        relations,
        pass,
    })
}

/// Check a single identity `lhs = rhs` at sampled points.
pub fn check_model_identity(
    lhs: &Polynomial,
    rhs: &Polynomial,
    sampler: &dyn Sampler,
    n_samples: u64,
    tolerance: f64,
    seed: u64,
) -> Result<VerificationReport, ModelError> {
    if n_samples < 1 {
        return Err(ModelError::TooFewSamples {
            needed: 1,
            got: n_samples,
        });
    }
    let diff = lhs - rhs;
    let maxima = max_residuals(std::slice::from_ref(&diff), sampler, n_samples, seed)?;
    let (res, idx) = maxima[0];
    let (n, k) = sampler.ambient();
    Ok(VerificationReport {
        space: format!("identity[{} = {}]", lhs, rhs),
        n,
        k,
        samples: n_samples,
        seed,
        tolerance,
        sampler: sampler.describe(),
        relations: vec![RelationCheck {
            text: diff.to_string(),
            max_residual: res,
            argmax_sample_index: idx,
        }],
        pass: res < tolerance,
    })
}
