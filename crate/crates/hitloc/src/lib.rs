//! # hitloc
//!
//! Boundary-hitting noise for drift-diffusion transport: when a particle
//! released at the origin of R^d drifts toward an absorbing hyperplane at
//! distance `lambda` and diffuses isotropically, the transverse coordinates
//! of its first contact point follow an isotropic, semi-heavy-tailed law on
//! R^{d-1} governed by the normalized drift `u`. This crate implements that
//! family end to end:
//!
//! - [`ndfhl`]: density (Bessel and elementary forms), characteristic
//!   function, exact variance-mixture sampler, moments, the defective
//!   reverse-drift variant, the Cauchy limit at `u = 0`, and the mapping
//!   onto the isotropic NIG parameterization;
//! - [`ig`]: the inverse-Gaussian hitting-time law with its exact sampler,
//!   Laplace transform, and logarithmic/inverse moments;
//! - [`entropy`]: differential entropy by radial quadrature, Monte-Carlo
//!   plug-in estimation, the d = 3 closed form, and the conditional-Gaussian
//!   / Max-Ent sandwich;
//! - [`capacity`]: high-SNR bounds for the additive channel Y = X + N under
//!   a second-moment constraint, the exact asymptotic offset, and the
//!   effective (entropy) noise power;
//! - [`validation`]: independent oracles, from raw Euler-Maruyama
//!   first-hitting simulation with Brownian-bridge crossing correction to
//!   empirical characteristic-function gates;
//! - [`special`] and [`quad`]: the scalar special functions and adaptive
//!   Gauss-Kronrod integration everything above is built on.
//!
//! Randomized operations are deterministic per 64-bit seed (chunked
//! counter-based streams), so results are reproducible bit for bit on a
//! platform regardless of thread count. `HITLOC_THREADS` caps parallelism.
//!
//! The `hitloc` binary exposes the same functionality as subcommands; see
//! the crate examples for library usage.

pub mod capacity;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod ig;
pub mod ndfhl;
pub mod quad;
mod rng;
pub mod special;
pub mod validation;

pub use capacity::CapacityReport;
pub use entropy::{EntropyEstimate, EntropyMethod};
pub use error::{Error, Result};
pub use ig::{ig_from_physical, IgParams, PhysicalTransport};
pub use ndfhl::{
    cauchy_entropy, cauchy_pdf, hit_probability, NdfhlParams, NigParams, SampleBatch,
    SignedDriftParams,
};
pub use special::AccuracyPolicy;
pub use validation::{SdeConfig, ValidationReport};

/// Formats a float with 17 significant decimal digits, enough to round-trip
/// any f64.
pub(crate) fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
