//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    /// Input outside the mathematical domain of an operation
    /// (e.g. sampling a potential exactly at a charge location).
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),

    /// A configured resource cap would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),

    /// An iterative limit process failed to converge.
    #[error("convergence failure: {what} (last iterates {last:?}, {penultimate:?})")]
    Convergence {
        what: String,
        last: f64,
        penultimate: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CoreError {
    pub fn domain(msg: impl Into<String>) -> Self {
        CoreError::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CoreError::Usage(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        CoreError::Resource(msg.into())
    }
}
