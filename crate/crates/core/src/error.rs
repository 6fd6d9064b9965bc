use thiserror::Error;

/// Errors produced by the approximation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },

    #[error("argument {value} outside the domain: {reason}")]
    Domain { value: f64, reason: &'static str },

    #[error("size mismatch: expected {expected} values, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("tolerance {tol:e} unreachable (best bound {bound:e}): {reason}")]
    ToleranceUnreachable { tol: f64, bound: f64, reason: &'static str },

    #[error("invalid exponent {0}: singular exponents must exceed -1/2")]
    InvalidExponent(f64),

    #[error("invalid logarithm power {0}: must be a positive integer")]
    InvalidMu(i64),

    #[error("invalid parameter: {0}")]
    InvalidParameters(String),

    #[error("function is unbounded at x = {0}")]
    UnboundedAtEndpoint(f64),

    #[error("function is unbounded on [-1, 1]; a sup-norm approximation does not exist")]
    UnboundedFunction,

    #[error("no convergence after {iterations} refinements: {reason}")]
    NonConvergence { iterations: usize, reason: &'static str },

    #[error("asymptotic formula needs positive exponents, got {0}")]
    UnsupportedExponent(f64),

    #[error("series has {available} coefficients, aliasing needs at least {required}")]
    InsufficientCoefficients { available: usize, required: usize },

    #[error("exchange lost alternation at iteration {iteration} ({found} alternating extrema, need {needed})")]
    AlternationLoss {
        iteration: usize,
        found: usize,
        needed: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
