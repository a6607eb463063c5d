use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ring-closure digit {digit} opened at byte {offset} is never closed")]
    UnclosedRing { digit: u16, offset: usize },

    #[error("unbalanced parenthesis at byte {offset}")]
    UnbalancedParenthesis { offset: usize },

    #[error("unknown element `{symbol}` at byte {offset}")]
    UnknownElement { symbol: String, offset: usize },

    #[error("valence violation on atom {atom} ({element}): {detail} (near byte {offset})")]
    ValenceViolation {
        atom: usize,
        element: String,
        detail: String,
        offset: usize,
    },

    #[error("syntax error at byte {offset}: {detail}")]
    Syntax { detail: String, offset: usize },

    #[error("no valid alternating bond assignment for the aromatic system containing atom {atom}")]
    KekulizationFailure { atom: usize },

    #[error("molecule has no position where a hydroxyl can be attached")]
    NoSubstitutablePosition,

    #[error("atom index {index} out of range (molecule has {len} atoms)")]
    AtomIndexOutOfRange { index: usize, len: usize },

    #[error("bond endpoints {a}-{b} invalid: {detail}")]
    InvalidBond { a: usize, b: usize, detail: String },

    #[error("atom {atom} has no atom-contribution parameters; element-level fallback used")]
    UnparameterizedAtomType { atom: usize },

    #[error("malformed record at line {line}: {detail}")]
    MalformedRecord { line: usize, detail: String },

    #[error("unsupported structure file extension `{ext}` (expected xyz or sdf)")]
    UnsupportedFormat { ext: String },

    #[error("i/o error on `{path}`: {detail}")]
    Io { path: String, detail: String },
}
