use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Error)]
pub enum Error {
    /// A body description violates a representation invariant
    /// (unbounded, empty interior, wrong dimensions, ...).
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation was called outside of its domain of definition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
