//! Process-level error taxonomy. Every failure a command can hit maps onto
//! one of three exit codes so shell callers can branch on the cause:
//! usage (1), bad data (2), missing prerequisite (3).

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or config contents: unknown flags, malformed config.
    Usage(String),
    /// Inputs exist but are invalid: malformed CSV, stale batch, audit fail.
    Data(String),
    /// A required artifact or path is absent; the message names it and the
    /// command that produces it.
    Prereq(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Prereq(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Prereq(msg) => write!(f, "missing prerequisite: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type Result<T> = std::result::Result<T, CliError>;

/// Domain errors surface as data errors: the input was readable but wrong.
macro_rules! data_from {
    ($($ty:ty),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> CliError {
                CliError::Data(e.to_string())
            }
        })*
    };
}

data_from!(
    molgraph::Error,
    embedding::Error,
    generator::Error,
    predict::Error,
    screen::Error,
    toplap::Error,
);

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn data(msg: impl Into<String>) -> CliError {
    CliError::Data(msg.into())
}

pub fn prereq(msg: impl Into<String>) -> CliError {
    CliError::Prereq(msg.into())
}

/// I/O on a path the user handed us: report path + cause as a data error.
pub fn io_data(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}
