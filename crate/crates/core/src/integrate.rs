//! Monte Carlo moments of words under the matrix models.
//!
//! The integration functional of a `K x K` model is the normalized trace
//! averaged over the parameter space: a word's moment is estimated as the
//! sample mean of `trace(eval(w, x)) / K` over independent points, with the
//! standard error of the mean. Sample `i` comes from the documented
//! sub-stream of the master seed, per-sample values are reduced by a fixed
//! pairwise summation tree, and a word and its adjoint are evaluated
//! through a shared canonical representative, so `estimate(w*)` is the
//! complex conjugate of `estimate(w)` exactly and reruns are bit-identical.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{
    eval_word_banded, substream_seed, HaarUnitarySampler, ModelError, Sampler,
    SphereProductSampler,
};
use crate::ncalg::{Generator, SpaceId, Word};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentError {
    #[error("space `{0}` has no sampler; moments need a concrete model")]
    UnsupportedSpace(SpaceId),
    #[error("moment estimation needs at least 2 samples, got {0}")]
    TooFewSamples(u64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A single estimated moment.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MomentEstimate {
    pub word: String,
    pub space: String,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "K")]
    pub k: u32,
    pub samples: u64,
    pub seed: u64,
    pub estimate: Complex64,
    pub standard_error: f64,
    pub exact_value: Option<Complex64>,
    pub exact_note: Option<String>,
    pub sampler: String,
}

/// Sampler of the model a space is integrated over. The classical sphere is
/// the `K = 1` model; the half-liberated sphere and quantum group use the
/// requested `K`.
fn moment_sampler(
    space: SpaceId,
    n: u32,
    k: u32,
) -> Result<(Box<dyn Sampler>, u32), MomentError> {
    match space {
        SpaceId::ClassicalSphere => Ok((Box::new(SphereProductSampler { n, k: 1 }), 1)),
        SpaceId::KHalfSphere => Ok((Box::new(SphereProductSampler { n, k }), k)),
        SpaceId::UnkQuantumGroup => Ok((Box::new(HaarUnitarySampler { n, k }), k)),
        other => Err(MomentError::UnsupportedSpace(other)),
    }
}

/// Fixed pairwise summation tree, independent of thread count.
fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

fn pairwise_sum_f64(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum_f64(a) + pairwise_sum_f64(b)
        }
    }
}

/// Exact moments known in closed form for the homogeneous measures, used to
/// annotate estimates.
fn exact_moment(w: &Word, space: SpaceId, n: u32) -> Option<(Complex64, String)> {
    if w.is_empty() {
        return Some((Complex64::new(1.0, 0.0), "unit word".into()));
    }
    let ls = &w.letters;
    let nf = n as f64;
    let is_sphere = !space.is_quantum_group();
    match ls.len() {
        2 => {
            let (a, b) = (ls[0], ls[1]);
            if a.generator == b.generator && a.starred != b.starred {
                // z_i z_i^* or u_ij u_ij^*: second moment of one coordinate
                return Some((
                    Complex64::new(1.0 / nf, 0.0),
                    "second moment of a uniform unit coordinate".into(),
                ));
            }
            if is_sphere && a.starred != b.starred {
                if let (Generator::Sphere(i), Generator::Sphere(j)) = (a.generator, b.generator) {
                    if i != j {
                        return Some((Complex64::new(0.0, 0.0), "phase symmetry".into()));
                    }
                }
            }
            None
        }
        4 => {
            // (z_i z_i^*)^2: fourth moment of one coordinate
            if is_sphere
                && ls[0].generator == ls[1].generator
                && ls[1].generator == ls[2].generator
                && ls[2].generator == ls[3].generator
                && !ls[0].starred
                && ls[1].starred
                && !ls[2].starred
                && ls[3].starred
            {
                return Some((
                    Complex64::new(2.0 / (nf * (nf + 1.0)), 0.0),
                    "fourth moment of a uniform unit coordinate".into(),
                ));
            }
            None
        }
        _ => None,
    }
}

/// Estimate the moment of one word. Deterministic under a fixed seed.
pub fn integrate_word(
    w: &Word,
    space: SpaceId,
    n: u32,
    k: u32,
    n_samples: u64,
    seed: u64,
) -> Result<MomentEstimate, MomentError> {
    let (sampler, model_k) = moment_sampler(space, n, k)?;
    if n_samples < 2 {
        return Err(MomentError::TooFewSamples(n_samples));
    }
    // canonical representative shared by a word and its adjoint
    let adj = w.adjoint();
    let (canonical, conjugate) = if adj < *w { (adj, true) } else { (w.clone(), false) };
    let values: Vec<Complex64> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let point = sampler.sample_indexed(seed, i)?;
            let banded = eval_word_banded(&canonical.letters, &point)?;
            let v = banded.trace() / model_k as f64;
            Ok(if conjugate { v.conj() } else { v })
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    let mean = pairwise_sum(&values) / n_samples as f64;
    let sq: Vec<f64> = values.iter().map(|v| (v - mean).norm_sqr()).collect();
    let variance = pairwise_sum_f64(&sq) / (n_samples - 1) as f64;
    let standard_error = (variance / n_samples as f64).sqrt();
    let exact = exact_moment(w, space, n);
    Ok(MomentEstimate {
        word: w.to_string(),
        space: space.to_string(),
        n,
        k: model_k,
        samples: n_samples,
        seed,
        estimate: mean,
        standard_error,
        exact_value: exact.as_ref().map(|(v, _)| *v),
        exact_note: exact.map(|(_, s)| s),
        sampler: sampler.describe(),
    })
}

/// Batched estimation: word `j` draws from the fresh sub-stream
/// `substream_seed(seed, j)`, so the table is reproducible as a whole.
pub fn moment_table(
    words: &[Word],
    space: SpaceId,
    n: u32,
    k: u32,
    n_samples: u64,
    seed: u64,
) -> Result<Vec<MomentEstimate>, MomentError> {
    words
        .iter()
        .enumerate()
        .map(|(j, w)| integrate_word(w, space, n, k, n_samples, substream_seed(seed, j as u64)))
        .collect()
}
