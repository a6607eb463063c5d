//! Stochastic molecular generator: a mean-reverting drift–diffusion over
//! latent vectors, with an exact transition sampler, an explicit
//! Euler–Maruyama sampler for validation, closed-form moments, and
//! distribution-level oracles (KS, total variation) used by the test
//! suites.

pub mod batch;
pub mod error;
pub mod moments;
pub mod oracle;
pub mod schedule;
pub mod spec;
pub mod stepper;

pub use batch::{load_batch, save_batch, BatchHeader};
pub use error::{Error, Result};
pub use moments::{analytic_moments, stationary_variance, Moments};
pub use schedule::{generate, trajectory_rng, GeneratedSample, GenerationSchedule, Integrator};
pub use spec::{drift_target, DriftSpec, DEFAULT_ALPHA, DEFAULT_SIGMA};
pub use stepper::{euler_maruyama_step, ou_exact_step, Sampler};
