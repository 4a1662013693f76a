use thiserror::Error;

use crate::format::FormatError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("order contract violated: the matrix raised to {ord} is not the identity")]
    OrderContract { ord: u64 },

    #[error("closure exceeded cap (group may be infinite): more than {cap} elements")]
    ClosureCap { cap: usize },

    #[error("element order exceeds cap of {cap}")]
    OrderCap { cap: usize },

    #[error("generator {index} is not invertible")]
    SingularGenerator { index: usize },

    #[error("empty generator list")]
    NoGenerators,

    #[error("dimension too small for chain criterion (n = {0})")]
    DimensionTooSmall(usize),

    #[error("{0}")]
    Construction(String),

    #[error(transparent)]
    Format(#[from] FormatError),
}

pub type Result<T> = std::result::Result<T, Error>;
