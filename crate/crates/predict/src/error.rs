use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Affinity labels must be strictly positive concentrations.
    #[error("label value must be > 0 nM, got {value}")]
    NonPositiveValue { value: f64 },

    /// Training diverged: the loss left the finite range.
    #[error("training loss became non-finite at epoch {epoch} (loss {loss})")]
    NonFiniteLoss { epoch: usize, loss: f64 },

    /// Query features carry a different fingerprint tag than the model
    /// was trained on.
    #[error("fingerprint kind mismatch: model trained on `{expected}`, query is `{got}`")]
    FingerprintMismatch { expected: String, got: String },

    /// Cross-validation needs at least k rows.
    #[error("dataset has {rows} rows, need at least {needed}")]
    TooFewRows { rows: usize, needed: usize },

    /// Feature matrix and label vector disagree, or a query row has the
    /// wrong width.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A consensus needs at least one member.
    #[error("consensus requires at least one member")]
    NoMembers,

    /// Consensus members disagree on the fingerprint kind.
    #[error("consensus members have mixed fingerprint kinds: `{a}` vs `{b}`")]
    MixedMembers { a: String, b: String },

    #[error("unknown target `{name}` (expected MOR, KOR, DOR or hERG)")]
    UnknownTarget { name: String },

    #[error("unknown label type `{name}` (expected Ki or IC50)")]
    UnknownLabelType { name: String },

    #[error("dataset record {line}: {detail}")]
    BadRecord { line: usize, detail: String },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset mixes targets {a} and {b}; splits must be single-target")]
    MixedTargets { a: String, b: String },

    #[error("model file malformed: {detail}")]
    BadModelFile { detail: String },

    /// Hyperparameters or inputs outside the valid range (e.g. subsample
    /// not in (0, 1], non-finite training values).
    #[error("invalid parameters: {detail}")]
    InvalidParams { detail: String },

    #[error("io on {path}: {detail}")]
    Io { path: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
