use thiserror::Error;

/// Errors shared by all modules in this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input violates a documented precondition (dimension mismatch,
    /// non-symmetric matrix where symmetry is required, invalid parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request is well-formed but exceeds a configured capability bound
    /// (factorization degree, subgroup enumeration order, search budget).
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// Two independent internal computations disagreed. This indicates a bug
    /// and is surfaced instead of silently returning one of the answers.
    #[error("internal consistency violation: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}
