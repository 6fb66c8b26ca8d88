use thiserror::Error;

/// Errors raised by the library.
///
/// [`Error::Parse`] is the only variant caused by malformed *syntax*; every
/// other variant is a domain error on well-formed input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field size {0} exceeds the cap of 65536 elements")]
    FieldTooLarge(String),
    #[error("degree {0} exceeds the cap of {1}")]
    DegreeTooLarge(usize, usize),
    #[error("operands belong to different fields")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial where degree >= 1 is required")]
    ConstantPolynomial,
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("characteristic {p} divides {n}")]
    WildDegree { p: u64, n: u64 },
    #[error("{0}")]
    InvalidExtension(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
