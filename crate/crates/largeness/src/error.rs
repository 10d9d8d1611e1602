//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value or window fell outside the universe a set lives in.
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of an operation was violated.
    #[error("precondition error: {0}")]
    Precondition(String),
    /// A search or enumeration exceeded its declared bounds or budget.
    #[error("bounds error: {0}")]
    Bounds(String),
    /// A certificate could not be established within the given caps.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// Malformed textual input (polynomial expressions, window specs, JSON).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn bounds(msg: impl Into<String>) -> Self {
        Error::Bounds(msg.into())
    }
    pub fn inconclusive(msg: impl Into<String>) -> Self {
        Error::Inconclusive(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
