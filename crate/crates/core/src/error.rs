use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (n = 0, y < 2, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Parameters that violate an operation's stated preconditions.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Work that exceeds a configured size or search cap.
    #[error("capacity error: {0}")]
    Capacity(String),
    /// A structural lemma check failed. Never expected on valid input.
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
