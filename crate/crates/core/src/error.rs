//! Crate-wide error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two ring elements or matrices with different moduli were combined.
    ModulusMismatch { left: usize, right: usize },
    /// Block-matrix shapes are incompatible for the requested operation.
    ShapeMismatch(String),
    /// Element has no inverse in GF(2)[x]/(x^p+1).
    NotInvertible,
    /// Invalid system parameters or malformed inputs.
    InvalidParams(String),
    /// Vector length does not match what the operation expects.
    LengthMismatch { expected: usize, got: usize },
    /// Circular distance of an index pair with itself is undefined.
    EqualIndices,
    /// The iterative decoder did not annihilate the syndrome (Bob's
    /// observable reaction).
    DecodingFailure,
    /// The decryption oracle ran out of its query budget.
    BudgetExhausted,
    /// Not enough samples to classify a distance (tally floor not met).
    InsufficientData(String),
    /// A reconstruction search finished without a consistent solution.
    NoSolution(String),
    /// File parsing / formatting problems.
    Parse(String),
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModulusMismatch { left, right } => {
                write!(f, "modulus mismatch: {left} vs {right}")
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::NotInvertible => write!(f, "element is not invertible"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::EqualIndices => write!(f, "distance of equal indices is undefined"),
            Error::DecodingFailure => write!(f, "decoding failure"),
            Error::BudgetExhausted => write!(f, "oracle query budget exhausted"),
            Error::InsufficientData(msg) => write!(f, "insufficient data: {msg}"),
            Error::NoSolution(msg) => write!(f, "no solution: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
