use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("latent dimension mismatch: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },

    #[error("similarity is undefined when both vectors are zero")]
    BothZero,

    #[error("index contains no entries")]
    EmptyIndex,

    #[error("latent vector entry {index} is not finite")]
    NonFiniteEntry { index: usize },

    #[error("i/o error on `{path}`: {detail}")]
    Io { path: String, detail: String },

    #[error("not a readable index file: {detail}")]
    BadIndexFile { detail: String },

    #[error("index incompatible with this encoder: {detail}")]
    IncompatibleIndex { detail: String },
}
