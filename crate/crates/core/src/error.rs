use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{monomials} monomials for {variables} variables")]
    MonomialCount { monomials: usize, variables: usize },
    #[error("exponent matrix is singular")]
    Singular,
    #[error("not a sum of chain and loop atoms: {0}")]
    NotNormalForm(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("arity mismatch: expected {expected} symbols, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("{0} is not an element of the group")]
    NotAnElement(String),
    #[error("permutation {0} does not preserve the group")]
    NotInvariant(String),
    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("term is not of semidirect shape H⋊T")]
    NotSemidirect,
    #[error("orbifold sum {sum} is not divisible by the group order {order}")]
    NonIntegral { sum: i64, order: usize },
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
