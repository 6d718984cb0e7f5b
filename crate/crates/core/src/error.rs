//! Error type shared by every module in the crate.

use thiserror::Error;

/// What went wrong, split by who has to fix it.
#[derive(Debug, Error)]
pub enum SupError {
    /// A tuning parameter is outside its legal range (nonpositive
    /// temperature, zero merge tolerance, ...).
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The call itself is malformed: mismatched shapes, too few points,
    /// out-of-range cluster counts.
    #[error("invalid usage: {0}")]
    Usage(String),

    /// The input data cannot be digested (non-finite coordinates,
    /// ragged rows).
    #[error("invalid data: {0}")]
    Data(String),
}

impl SupError {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        SupError::Config(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        SupError::Usage(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        SupError::Data(msg.into())
    }
}
