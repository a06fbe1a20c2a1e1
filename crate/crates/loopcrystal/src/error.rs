use crate::poly::VarId;
use thiserror::Error;

/// Errors raised by the exact-arithmetic and crystal operations.
///
/// Poles are genuine poles of the birational maps and are always reported,
/// never papered over with a default value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial evaluation: no value assigned to variable {0}")]
    MissingVariable(VarId),
    #[error("pole: denominator {0} vanishes")]
    Pole(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("word application failed at position {position}: {source}")]
    WordPole {
        position: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("limit ratios did not converge: {0}")]
    NotConverged(String),
    #[error("floating-point overflow in {0}")]
    Overflow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
