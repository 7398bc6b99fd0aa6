use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("field degree must be positive")]
    ZeroDegree,
    #[error("field F_{p}^{s} is too large for word-size arithmetic")]
    FieldTooLarge { p: u64, s: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("{sub} does not divide {s}")]
    NotADivisor { sub: u32, s: u32 },
    #[error("unsupported conductor {0}; expected p, 2^a or 2^a*p")]
    UnsupportedConductor(u64),
    #[error("enumeration of {q} elements exceeds the budget of {budget}")]
    BudgetExceeded { q: u64, budget: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("p mod 8 = {0} unsupported")]
    UnsupportedResidue(u64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
