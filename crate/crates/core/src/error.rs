use thiserror::Error;

/// Errors produced by the approximation pipeline and its building blocks.
#[derive(Debug, Error)]
pub enum PadeError {
    #[error("denominator vanishes at the expansion point (|den(a)| = {magnitude:e})")]
    PoleAtCenter { magnitude: f64 },

    #[error("need {needed} series coefficients, only {available} available")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("Toeplitz index k = {k} outside the family range [{lo}, {hi}]")]
    IndexOutOfFamily { k: i64, lo: i64, hi: i64 },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("shape mismatch: expected {expected} columns, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("SVD did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error(
        "numerical kernel of T_(mu1+1) has dimension {dimension}, expected 1; adjust the tolerance"
    )]
    KernelDimensionMismatch { dimension: usize },

    #[error("zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("denominator is the zero polynomial")]
    ZeroDenominator,

    #[error("expansion centers differ ({left} vs {right})")]
    CenterMismatch { left: String, right: String },

    #[error("non-finite coefficient")]
    NonFinite,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no coefficients in input")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, PadeError>;
