use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Affinity gate asked about a target that has no prediction.
    #[error("no predicted affinity for target `{name}`")]
    MissingTarget { name: String },

    /// Property gate found configured indexes absent from the map.
    #[error("missing ADMET properties: {}", missing.join(", "))]
    MissingProperty { missing: Vec<String> },

    /// Policy enables an index the gate does not know how to check.
    #[error("unknown ADMET index `{name}`")]
    UnknownIndex { name: String },

    #[error("invalid policy: {detail}")]
    InvalidPolicy { detail: String },

    /// Novelty scoring needs a non-empty library index.
    #[error("library index is empty")]
    EmptyIndex,

    #[error("remote property service timed out: {detail}")]
    Timeout { detail: String },

    #[error("remote property service returned malformed data: {detail}")]
    MalformedResponse { detail: String },

    /// Some of the requested structures came back without properties.
    #[error("partial batch: {} structures failed: {}", failed.len(), failed.join(", "))]
    PartialBatch { failed: Vec<String> },

    #[error("candidate record malformed: {detail}")]
    BadRecord { detail: String },

    /// Persisted verdicts no longer match what the policy recomputes.
    #[error("record audit failed for `{candidate}`: {detail}")]
    AuditMismatch { candidate: String, detail: String },

    #[error("io on {path}: {detail}")]
    Io { path: String, detail: String },

    #[error(transparent)]
    Embedding(#[from] embedding::Error),

    #[error(transparent)]
    Generator(#[from] generator::Error),

    #[error(transparent)]
    Molgraph(#[from] molgraph::Error),

    #[error(transparent)]
    Predict(#[from] predict::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
