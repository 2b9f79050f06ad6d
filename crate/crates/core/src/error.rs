use thiserror::Error;

/// Errors raised by graph operations.
///
/// The variants separate "the input is wrong" (`Domain`, `Parse`) from
/// "the input is fine but too large to decide here" (`Capability`), so
/// callers can tell an undecided answer from a negative one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability limit: {0}")]
    Capability(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("verification failed ({statement}): {detail}")]
    Verification { statement: String, detail: String },

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
