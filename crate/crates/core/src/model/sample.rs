//! Samplers for the model parameter spaces, with reproducible sub-streams.
//!
//! Sample `i` of a run with master seed `s` is drawn from a ChaCha8 stream
//! seeded with `splitmix64(s ^ splitmix64(i))`, so parallel and serial runs
//! produce bit-identical samples.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::{CMatrix, C_ZERO};
use super::{ModelError, Point, SamplePoint, UnitaryTuple};

/// SplitMix64 finalizer, used to derive per-sample stream seeds.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the sub-stream for sample `index` under `master` seed.
pub fn substream_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// The sub-stream itself.
pub fn substream(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(substream_seed(master, index))
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// One uniform point of `(S^{N-1}_C)^K`: each factor is a vector of `N`
/// independent standard complex Gaussians, normalized.
pub fn sample_sphere_point(n: u32, k: u32, rng: &mut ChaCha8Rng) -> SamplePoint {
    let mut vectors = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let mut v: Vec<Complex64> = (0..n).map(|_| standard_complex(rng)).collect();
        let mut norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        while norm == 0.0 {
            v = (0..n).map(|_| standard_complex(rng)).collect();
            norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        }
        v.iter_mut().for_each(|z| *z /= norm);
        vectors.push(v);
    }
    SamplePoint::new(vectors).expect("normalized Gaussian vectors are unit")
}

/// One Haar-distributed `N x N` unitary: Ginibre matrix, Gram-Schmidt
/// orthonormalization, then right multiplication by the phases of the
/// triangular diagonal (`ginibre-qr-phase` procedure).
pub fn sample_haar_unitary(n: u32, rng: &mut ChaCha8Rng) -> CMatrix {
    let n = n as usize;
    let g = CMatrix::from_fn(n, n, |_, _| standard_complex(rng));
    // modified Gram-Schmidt with re-orthogonalization
    let mut q = g;
    let mut diag = vec![C_ZERO; n];
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let mut proj = C_ZERO;
                for r in 0..n {
                    proj += q[(r, i)].conj() * q[(r, j)];
                }
                for r in 0..n {
                    let qi = q[(r, i)];
                    q[(r, j)] -= proj * qi;
                }
            }
        }
        let norm = (0..n).map(|r| q[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        diag[j] = Complex64::new(norm, 0.0);
        for r in 0..n {
            q[(r, j)] /= norm;
        }
    }
    for j in 0..n {
        let phase = if diag[j].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            diag[j] / diag[j].norm()
        };
        for r in 0..n {
            q[(r, j)] *= phase;
        }
    }
    q
}

/// A source of model sample points.
pub trait Sampler: Send + Sync {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Point, ModelError>;

    /// Identifier recorded in reports.
    fn describe(&self) -> String;

    /// Ambient `(N, K)`.
    fn ambient(&self) -> (u32, u32);

    /// Deterministic indexed draw from the documented sub-stream.
    fn sample_indexed(&self, master_seed: u64, index: u64) -> Result<Point, ModelError> {
        let mut rng = substream(master_seed, index);
        self.sample(&mut rng)
    }
}

/// Product of uniform measures on `(S^{N-1}_C)^K`.
#[derive(Clone, Debug)]
pub struct SphereProductSampler {
    pub n: u32,
    pub k: u32,
}

impl Sampler for SphereProductSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Point, ModelError> {
        Ok(Point::Sphere(sample_sphere_point(self.n, self.k, rng)))
    }

    fn describe(&self) -> String {
        format!("sphere-product(N={},K={},gaussian-normalized)", self.n, self.k)
    }

    fn ambient(&self) -> (u32, u32) {
        (self.n, self.k)
    }
}

/// Product of Haar measures on `U_N^K`.
#[derive(Clone, Debug)]
pub struct HaarUnitarySampler {
    pub n: u32,
    pub k: u32,
}

impl Sampler for HaarUnitarySampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Point, ModelError> {
        let tuple: Vec<CMatrix> = (0..self.k)
            .map(|_| sample_haar_unitary(self.n, rng))
            .collect();
        Ok(Point::Unitaries(UnitaryTuple::new(tuple)?))
    }

    fn describe(&self) -> String {
        format!("haar-unitary(N={},K={},ginibre-qr-phase)", self.n, self.k)
    }

    fn ambient(&self) -> (u32, u32) {
        (self.n, self.k)
    }
}

/// The diagonal `{(x, x, …, x)}`, cyclic-invariant by construction.
#[derive(Clone, Debug)]
pub struct DiagonalSphereSampler {
    pub n: u32,
    pub k: u32,
}

impl Sampler for DiagonalSphereSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Point, ModelError> {
        let one = sample_sphere_point(self.n, 1, rng);
        let v = one.vectors()[0].clone();
        let point = SamplePoint::new(vec![v; self.k as usize])
            .expect("copies of a unit vector form a valid point");
        Ok(Point::Sphere(point))
    }

    fn describe(&self) -> String {
        format!("sphere-diagonal(N={},K={})", self.n, self.k)
    }

    fn ambient(&self) -> (u32, u32) {
        (self.n, self.k)
    }
}

type SpherePredicate = Arc<dyn Fn(&SamplePoint) -> bool + Send + Sync>;

/// Rejection sampler over a base sphere sampler, restricted to a predicate.
pub struct RestrictedSampler {
    base: Arc<dyn Sampler>,
    predicate: SpherePredicate,
    max_attempts: u64,
    attempts: AtomicU64,
    accepted: AtomicU64,
}

impl RestrictedSampler {
    /// Observed acceptance rate so far, if anything was drawn.
    pub fn acceptance_rate(&self) -> Option<f64> {
        let att = self.attempts.load(Ordering::Relaxed);
        if att == 0 {
            None
        } else {
            Some(self.accepted.load(Ordering::Relaxed) as f64 / att as f64)
        }
    }
}

/// Build a rejection sampler over `base`, first probing that the predicate
/// is invariant under the cyclic shift of the tuple (sampled check on
/// `probe_samples` points, not a proof).
pub fn restrict_sampler(
    base: Arc<dyn Sampler>,
    predicate: SpherePredicate,
    max_attempts: u64,
    probe_samples: u64,
    probe_seed: u64,
) -> Result<RestrictedSampler, ModelError> {
    for i in 0..probe_samples {
        let mut rng = substream(probe_seed, i);
        if let Point::Sphere(x) = base.sample(&mut rng)? {
            let mut shifted = x.clone();
            for _ in 0..x.k() {
                shifted = shifted.cyclic_shift();
                if predicate(&x) != predicate(&shifted) {
                    return Err(ModelError::NotShiftInvariant);
                }
            }
        }
    }
    Ok(RestrictedSampler {
        base,
        predicate,
        max_attempts,
        attempts: AtomicU64::new(0),
        accepted: AtomicU64::new(0),
    })
}

impl Sampler for RestrictedSampler {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Result<Point, ModelError> {
        for _ in 0..self.max_attempts {
            self.attempts.fetch_add(1, Ordering::Relaxed);
            let p = self.base.sample(rng)?;
            let keep = match &p {
                Point::Sphere(x) => (self.predicate)(x),
                Point::Unitaries(_) => true,
            };
            if keep {
                self.accepted.fetch_add(1, Ordering::Relaxed);
                return Ok(p);
            }
        }
        Err(ModelError::LowAcceptance {
            attempts: self.max_attempts,
        })
    }

    fn describe(&self) -> String {
        format!("restricted({})", self.base.describe())
    }

    fn ambient(&self) -> (u32, u32) {
        self.base.ambient()
    }
}
