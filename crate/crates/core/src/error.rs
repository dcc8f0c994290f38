use thiserror::Error;

/// Errors raised by the norm constructions and estimators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid set: {0}")]
    InvalidSet(String),

    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    #[error("empty slice: sup of the functional over the ball is {sup}, below level {level}")]
    EmptySlice { sup: f64, level: f64 },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("support index {index} exceeds dimension bound {bound}")]
    SupportOutOfBounds { index: usize, bound: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("depth {depth} exceeds the functional-list cap {cap}")]
    DepthCap { depth: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn violated(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}
