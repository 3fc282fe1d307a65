//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error type. The three variants map onto the CLI exit codes
/// (1 = parse, 2 = validation, 3 = oracle precision).
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text: coefficient literals, entry specs, JSON documents.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid input that violates a mathematical precondition.
    #[error("{0}")]
    Validation(String),

    /// A numeric oracle could not reach the requested precision.
    #[error("precision: {0}")]
    Precision(String),
}

impl Error {
    /// Process exit code the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Validation(_) => 2,
            Error::Precision(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
