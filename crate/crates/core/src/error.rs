use crate::poly1::Var;
use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable {0} is not assigned")]
    MissingVariable(Var),
    #[error("expected a polynomial in {expected} only, found {found}")]
    NotUnivariate { expected: Var, found: Var },
    #[error("unknown DAG node {0}")]
    UnknownNode(usize),
    #[error("grid for {var} has {size} points but more than {needed} are required")]
    GridTooSmall { var: Var, size: usize, needed: u64 },
    #[error("polynomials {0} and {1} are identical")]
    DuplicatePolynomials(usize, usize),
    #[error("inputs {0} and {1} are identical expressions")]
    DuplicateInputs(usize, usize),
    #[error("not a monotone function: {0}")]
    NotMonotone(String),
    #[error("certified threshold {0} is beyond the scan limit")]
    ThresholdTooLarge(String),
    #[error("constructed assignment failed verification")]
    VerificationFailed,
    #[error("syntax error at position {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: String, found: String },
    #[error("{token} at position {pos} is not allowed in a {order} expression")]
    OrderMismatch { pos: usize, token: String, order: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
