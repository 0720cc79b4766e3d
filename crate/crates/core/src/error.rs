use num_complex::Complex64;
use thiserror::Error;

/// Errors raised while parsing seeds, building solutions or evaluating them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("divisor is not left located: {0}")]
    NotLeftLocated(String),

    #[error("normalization incompatible with seed: {0}")]
    NormalizationIncompatible(String),

    #[error("correction polynomial fit residual {residual:e} exceeds {tolerance:e}")]
    FitResidualExceeded { residual: f64, tolerance: f64 },

    #[error("truncation tolerance unreachable below radius cap {cap}")]
    ToleranceUnreachable { cap: f64 },

    #[error("pole of order {order} at {at}")]
    Pole { at: Complex64, order: u32 },

    #[error("value overflows the floating range at {at}")]
    Overflow { at: Complex64 },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
