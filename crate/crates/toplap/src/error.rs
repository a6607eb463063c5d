use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// No atom in the cloud matched the element filter.
    #[error("element filter selected no atoms")]
    EmptySelection,

    /// Simplex order outside the supported range {0, 1, 2}.
    #[error("simplex order q={q} is not supported (only q ≤ 2)")]
    OrderUnsupported { q: usize },

    /// A spectrum was requested for a matrix that is not symmetric.
    #[error("matrix is not symmetric: max |a_ij − a_ji| = {max_deviation}")]
    NonSymmetric { max_deviation: f64 },

    /// A radius query beyond the range the complex was built for.
    #[error("radius {requested} exceeds the complex build radius {max}")]
    RadiusBeyondComplex { requested: f64, max: f64 },

    /// Malformed radius grid (empty, non-positive, or unsorted).
    #[error("invalid radius grid: {detail}")]
    InvalidGrid { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
