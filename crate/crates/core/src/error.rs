//! Error types shared by every module of the library.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("{what} = {value} out of range [{min}, {max}]")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    /// Base-locus points are first-class information, not silent zeros.
    #[error("polar map of degree {degree} is undefined at {point}: every partial of that order vanishes")]
    PolarMapUndefined { degree: u32, point: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

/// Coarse classes, one per documented exit status of the command line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Resource,
    Degenerate,
}

impl ErrorClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorClass::Parse => "parse",
            ErrorClass::Precondition => "precondition",
            ErrorClass::Resource => "resource",
            ErrorClass::Degenerate => "degenerate",
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } => ErrorClass::Parse,
            Error::Resource(_) => ErrorClass::Resource,
            Error::Degenerate(_) => ErrorClass::Degenerate,
            _ => ErrorClass::Precondition,
        }
    }
}
