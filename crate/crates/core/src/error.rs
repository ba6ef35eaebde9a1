use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature order must be at least 1")]
    ZeroOrder,

    #[error("panel count must be at least 1")]
    ZeroPanels,

    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{m} intervals cannot be split into panels of order {q}")]
    NotDivisible { m: usize, q: usize },

    #[error("fractional shift {0} must lie in [0, 1)")]
    ShiftOutOfRange(f64),

    #[error("sequence must not be empty")]
    EmptySequence,

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("adaptive quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    NoConvergence { estimate: f64, error: f64 },
}
