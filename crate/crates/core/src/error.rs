use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible in this ring")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point budget exceeded: {points} points > budget {budget}")]
    BudgetExceeded { points: String, budget: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
