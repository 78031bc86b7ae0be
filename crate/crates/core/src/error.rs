use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A computation needed a root that does not lie in the session field.
    #[error("no root in the session field: {0}")]
    RootNotInField(String),

    #[error("conductor {have} too small, need a multiple of {need}")]
    ConductorTooSmall { have: u32, need: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    /// An axiom or identity failed; the message names the first failure.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
