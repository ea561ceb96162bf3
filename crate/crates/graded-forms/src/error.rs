//! Error type shared by the whole engine.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A series does not carry enough known coefficients for the requested
    /// operation (distinct from a negative certification outcome).
    #[error("insufficient precision: need {needed} coefficients, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },

    /// A weight outside the operation's domain (e.g. Xi lifts need weight ≥ 2).
    #[error("unsupported weight {weight}: {reason}")]
    UnsupportedWeight { weight: i64, reason: String },

    /// An index, depth, offset or truncation bound out of range.
    #[error("argument out of range: {0}")]
    Range(String),

    /// Mutually inconsistent bookkeeping (weights/offsets that do not match up).
    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),

    /// Malformed JSON input on the CLI surface.
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
