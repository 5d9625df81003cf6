use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The feasibility procedure failed to reach a trustworthy answer.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Format(#[from] FormatError),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

/// A parse failure, always tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub kind: FormatErrorKind,
}

impl FormatError {
    pub fn new(line: usize, kind: FormatErrorKind) -> Self {
        FormatError { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormatErrorKind {
    EmptyInput,
    MalformedHeader(String),
    Arity { expected: usize, found: usize },
    InvalidNumber(String),
    InvalidTime(String),
    NonIncreasingTime { previous: u64, found: u64 },
    UnexpectedTime { expected: u64, found: u64 },
    InvertedBounds { lower: f64, upper: f64 },
    NonFinite,
    IndexOutOfRange { index: usize, dim: usize },
    ZeroNormal,
    UnknownDirective(String),
    Missing(String),
    Duplicate(String),
    Invalid(String),
}

impl fmt::Display for FormatErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FormatErrorKind::*;
        match self {
            EmptyInput => write!(f, "empty input, expected a header"),
            MalformedHeader(h) => write!(f, "malformed header `{h}`"),
            Arity { expected, found } => {
                write!(
                    f,
                    "wrong number of fields: expected {expected}, found {found}"
                )
            }
            InvalidNumber(tok) => write!(f, "invalid number `{tok}`"),
            InvalidTime(tok) => write!(f, "invalid timestep `{tok}`"),
            NonIncreasingTime { previous, found } => {
                write!(f, "non-increasing time {found} after {previous}")
            }
            UnexpectedTime { expected, found } => {
                write!(f, "expected time {expected}, found {found}")
            }
            InvertedBounds { lower, upper } => {
                write!(f, "lower bound {lower} exceeds upper bound {upper}")
            }
            NonFinite => write!(f, "non-finite value"),
            IndexOutOfRange { index, dim } => {
                write!(f, "index {index} out of range for dimension {dim}")
            }
            ZeroNormal => write!(f, "halfspace normal is zero"),
            UnknownDirective(d) => write!(f, "unknown directive `{d}`"),
            Missing(what) => write!(f, "missing {what}"),
            Duplicate(what) => write!(f, "duplicate {what}"),
            Invalid(msg) => write!(f, "{msg}"),
        }
    }
}
