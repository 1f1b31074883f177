//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the estimation, tuning and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Input observations violate a data invariant (non-finite values, too
    /// few rows, unsorted internal state).
    #[error("invalid data: {0}")]
    InvalidData(String),

    /// A tuning or model parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The sample is too small for the requested operation.
    #[error("sample too small: need at least {needed} observations, got {got}")]
    SampleTooSmall { needed: usize, got: usize },

    /// The requested tuning rule is only valid for design tail exponents
    /// beta > 1.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// Not enough points for a fit (e.g. rate regression on < 4 sizes).
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A CSV row failed to parse; `line` is 1-based.
    #[error("csv parse error at line {line}: {message}")]
    CsvParse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
