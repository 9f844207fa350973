use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime with 2 < p < 2^31")]
    InvalidPrime(u32),
    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("monomial length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
