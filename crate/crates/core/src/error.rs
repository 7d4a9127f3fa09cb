use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("even characteristic unsupported")]
    EvenCharacteristic,
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} exceeds the supported cap of {1}")]
    DegreeCap(usize, usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("polynomial is not q-symplectic")]
    NotSymplectic,
    #[error("point counting needs an odd-degree polynomial")]
    EvenDegreeUnsupported,
    #[error("precision exhausted at {0} bits")]
    PrecisionExhausted(u32),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: u64, got: u64 },
    #[error("polynomial is not separable")]
    NotSeparable,
    #[error("bounds do not satisfy a <= mu <= b")]
    BadBounds,
    #[error("bad family polynomial: {0}")]
    BadFamily(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse { line: usize, field: String, message: String },
    #[error("version mismatch: file has {found}, expected {expected}")]
    Version { found: String, expected: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
