use thiserror::Error;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operands live in different rings: {0}")]
    RingMismatch(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    NotDivisible,
    #[error("polynomial is not a p-th power")]
    NotPthPower,
    #[error("polynomial does not lie in the Dickson algebra (weighted degree {degree})")]
    NotInDickson { degree: u64 },
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("resource budget exceeded: {what} (estimated {estimate}, limit {limit})")]
    Budget {
        what: String,
        estimate: u64,
        limit: u64,
    },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
