use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} out of supported range 2..=65536")]
    ModulusOutOfRange(u32),
    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("enumeration too large: 2^{dim} coefficient tuples exceed the 2^{cap} cap")]
    EnumerationTooLarge { dim: usize, cap: usize },
    #[error("zero code not allowed here")]
    ZeroCode,
    #[error("code is not full-support; restrict to its support first")]
    RestrictFirst,
    #[error("coordinate {index} out of range for ground set of size {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("empty family not allowed here")]
    EmptyFamily,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget exceeded: estimated {estimate} units > budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("construction cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
