use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial of degree {0} is reducible")]
    Reducible(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices are not similar")]
    NotSimilar,
    #[error("exponent {k} is not coprime with the order {order}")]
    NotCoprime { k: u64, order: u64 },
    #[error("invalid element encoding")]
    InvalidEncoding,
    #[error("generators do not commute")]
    NonCommuting,
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("{what} exceeded the limit of {limit}")]
    GuardExceeded { what: &'static str, limit: u64 },
    #[error("invalid group description: {0}")]
    InvalidSpec(String),
    #[error("promise violated: {0}")]
    Promise(String),
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("retry budget of {0} attempts exhausted")]
    RetryBudget(usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Bad input as opposed to a failure inside an algorithm.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::FieldMismatch
                | Error::ZeroElement
                | Error::ZeroPolynomial
                | Error::NotMonic
                | Error::Singular
                | Error::DimensionMismatch(_)
                | Error::NotCoprime { .. }
                | Error::InvalidEncoding
                | Error::InvalidSpec(_)
                | Error::Parse { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
