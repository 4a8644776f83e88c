use thiserror::Error;

/// Errors raised by the algebra, geometry and resultant routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported dimension {dim} (at most {max} is supported)")]
    UnsupportedDimension { dim: usize, max: usize },
    #[error("lattice is not contained in the ambient lattice")]
    NotContained,
    #[error("no unique essential subfamily: {0}")]
    NoEssentialSubfamily(String),
    #[error("degenerate specialization: {0}")]
    Degenerate(String),
    #[error("zero divisor: {0}")]
    ZeroDivisor(String),
    #[error("ideal is not zero-dimensional")]
    PositiveDimensional,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("non-integral exponent {0}")]
    NonIntegralExponent(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
