use thiserror::Error;

/// Errors produced by construction-time validation and the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid transport parameters: {0}")]
    InvalidParams(String),

    #[error("regularization parameter mu = {0} outside the open interval (0, 1)")]
    MuOutOfRange(f64),

    #[error("smoothness order p = {0} must be strictly positive")]
    NonPositiveSmoothness(f64),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    #[error("non-real reconstruction: relative imaginary residue {residue:e} exceeds {tolerance:e}")]
    NonRealReconstruction { residue: f64, tolerance: f64 },

    #[error("invalid source specification: {0}")]
    InvalidSource(String),

    #[error("noise level delta = {0} outside the open interval (0, 1)")]
    DeltaOutOfRange(f64),

    #[error(
        "finite-difference oracle did not converge: refinement changed the trace by {change_percent:.2}% (limit 5%)"
    )]
    OracleNotConverged { change_percent: f64 },

    #[error("insufficient input for rate estimation: {0}")]
    InsufficientSpan(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
