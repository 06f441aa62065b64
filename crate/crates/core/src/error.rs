//! Library error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A configured size cap (degree, path length, support) was exceeded.
    #[error("resource cap exceeded: {0}")]
    Cap(String),
    /// Power-sum series of a specialization pair does not converge.
    #[error("divergent specialization: {0}")]
    Divergent(String),
    /// A truncated sum could not be certified within tolerance.
    #[error("truncation defect {defect:e} exceeds tolerance {tolerance:e}")]
    Defect { defect: f64, tolerance: f64 },
}

impl Error {
    /// True for errors caused by caps rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Cap(_) | Error::Defect { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
