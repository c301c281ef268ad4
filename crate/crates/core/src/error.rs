use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}; need 1 <= m <= 31")]
    InvalidDimension(usize),

    #[error("generator index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },

    #[error("point outside the domain: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("truncation did not reach tolerance {tol:e} within {max_order} terms (bound {bound:e})")]
    Truncation { tol: f64, max_order: usize, bound: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(m: usize) -> Result<()> {
    if (1..=31).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidDimension(m))
    }
}
