//! Error type shared across the library.

use std::fmt;

use crate::parse::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Division by the zero polynomial.
    DivisionByZero,
    /// gcd of two zero polynomials is undefined.
    GcdOfZeros,
    /// An operation required a nonconstant polynomial.
    ConstantInput,
    /// A derivation needs coprime components in strict mode.
    NonCoprime,
    /// A derivation needs integer coefficients.
    NonIntegerCoefficients,
    /// Both components of a system are zero.
    ZeroSystem,
    /// A parameter violates a documented precondition.
    InvalidParameter(String),
    /// Matrix dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// The kernel of the cofactor map did not have the dimension the
    /// theory guarantees; indicates an internal inconsistency.
    KernelDimension { expected: usize, got: usize },
    /// The shift grid was exhausted without finding a first integral even
    /// though the extactic curve vanishes; indicates an internal
    /// inconsistency.
    ShiftGridExhausted,
    /// Input text could not be parsed.
    Parse(ParseError),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::GcdOfZeros => write!(f, "gcd(0, 0) is undefined"),
            Error::ConstantInput => write!(f, "operation requires a nonconstant polynomial"),
            Error::NonCoprime => write!(f, "A and B must be coprime (strict mode)"),
            Error::NonIntegerCoefficients => {
                write!(f, "A and B must have integer coefficients")
            }
            Error::ZeroSystem => write!(f, "A and B must not both be zero"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::KernelDimension { expected, got } => write!(
                f,
                "cofactor map kernel has dimension {got}, expected {expected} \
                 (internal inconsistency)"
            ),
            Error::ShiftGridExhausted => write!(
                f,
                "shift grid exhausted without finding a first integral \
                 (internal inconsistency)"
            ),
            Error::Parse(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
