use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("reference weights must sum to 1 (got {sum})")]
    WeightSumViolation { sum: f64 },

    #[error("weight {value} at position {index} is negative")]
    NegativeWeight { index: usize, value: f64 },

    #[error("{refs} references but {weights} weights")]
    WeightCountMismatch { refs: usize, weights: usize },

    #[error("drift spec needs at least one reference vector")]
    NoReferences,

    #[error("latent dimension mismatch: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },

    #[error("mean-reversion rate must be positive (got {alpha})")]
    NonPositiveAlpha { alpha: f64 },

    #[error("noise amplitude must be nonnegative (got {sigma})")]
    NegativeSigma { sigma: f64 },

    #[error("step size must be positive (got {dt})")]
    NonPositiveStep { dt: f64 },

    #[error("explicit step unstable: alpha*dt = {alpha_dt} >= 1")]
    StepTooLarge { alpha_dt: f64 },

    #[error("invalid schedule: {detail}")]
    InvalidSchedule { detail: String },

    #[error(transparent)]
    Latent(#[from] embedding::Error),

    #[error("i/o error on `{path}`: {detail}")]
    Io { path: String, detail: String },

    #[error("not a readable batch file: {detail}")]
    BadBatchFile { detail: String },
}
