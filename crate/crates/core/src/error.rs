use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus is reducible over the prime field")]
    ReducibleModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not invertible modulo the given modulus")]
    NotInvertible,
    #[error("no p-th root exists for the given residue")]
    NoRoot,
    #[error("degree bound violated: {0}")]
    DegreeBoundViolated(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
