//! Explicit matrix models for higher half-liberated complex spheres and
//! unitary quantum groups.
//!
//! The library is organized in five layers:
//!
//! * [`ncalg`] — the symbolic layer: free `*`-polynomials over sphere
//!   coordinates `z_i` or quantum-group coordinates `u_ij`, relation presets
//!   for the sphere/quantum-group families, the `Z_K` grading, the
//!   `gamma` endomorphism and the rewriting of balanced words into
//!   degree-`K` block generators.
//! * [`model`] — the numerical layer: sample points of `(S^{N-1}_C)^K` and
//!   `U_N^K`, evaluation of words through the crossed-product matrix models
//!   (`z_i ↦ Σ_c (x_c)_i E_{c,c+1}`), relation verification with
//!   operator-norm residuals, commutants and explicit irreducible points.
//! * [`puretensor`] — rank-one (Segre) machinery: purity residuals,
//!   unit-norm factorization up to the torus gauge, the cyclic coefficient
//!   shift and the evaluation map onto sample points.
//! * [`partitions`] — colored partitions: category operations with loop
//!   counting, `T_π` realizations, bounded closure, intertwiner residuals
//!   against the models, pairing enumeration.
//! * [`integrate`] — Monte Carlo moments of words under the models, with
//!   standard errors, exact small-case values and reproducible seeded
//!   sub-streams.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything can be shared freely across worker threads.

pub mod integrate;
pub mod model;
pub mod ncalg;
pub mod partitions;
pub mod puretensor;

pub use integrate::{integrate_word, moment_table, MomentEstimate};
pub use model::{
    eval_poly, eval_word, qg_eval, CMatrix, Point, SamplePoint, UnitaryTuple, VerificationReport,
};
pub use ncalg::{Letter, Polynomial, RelationSet, SpaceId, Word};
pub use partitions::{ColoredPartition, Color};
pub use puretensor::Tensor;
