use thiserror::Error;

/// Errors raised by operators, objectives, solvers and the experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("degenerate PSF: weights must be non-negative with a positive sum")]
    DegeneratePsf,

    #[error("KL domain violation: model value {value:e} at index {index} is not positive")]
    KlDomain { index: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("objective does not provide a gradient splitting")]
    NoSplitting,

    #[error("invalid splitting: V[{index}] = {value:e}")]
    InvalidSplitting { index: usize, value: f64 },

    #[error("not a descent direction (g'd = {0:e})")]
    NotDescent(f64),

    #[error("zero denominator at index {0}")]
    ZeroDenominator(usize),

    #[error("{0}")]
    Config(String),

    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
