//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degree {degree} out of range (truncation degree {max})")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("series has nonzero constant term {value}; Cayley transform needs phi(0) = 0")]
    NonzeroConstantTerm { value: String },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("weight vector not admissible: |w|_{{q'}} * scale = {norm} > 1")]
    WeightNotAdmissible { norm: f64 },

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
