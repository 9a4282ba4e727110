use thiserror::Error;

/// Errors raised by the algebra engine and the experiment layer built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("coefficient not representable in field: {0}")]
    NotRepresentable(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("module is not of finite length: {0}")]
    NotFiniteLength(String),
    #[error("containment failure: {0}")]
    NotContained(String),
    #[error("not Cohen-Macaulay: {0}")]
    NotCohenMacaulay(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
