use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or out-of-contract input.
    Input,
    /// A well-formed input on which a mathematical contract fails.
    Mathematical,
    /// A library invariant was violated; indicates a bug.
    Internal,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("inhomogeneous polynomial: found terms of degree {first} and {second}")]
    Inhomogeneous { first: u32, second: u32 },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("not a perfect square")]
    NotAPerfectSquare,
    #[error("series is not expandable: {0}")]
    NonExpandable(String),
    #[error("entries are not symmetric at ({0}, {1})")]
    AsymmetricEntries(usize, usize),
    #[error("entry ({row}, {col}) has degree {found}, pattern requires {expected}")]
    DegreePatternViolation {
        row: usize,
        col: usize,
        expected: i64,
        found: u32,
    },
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("degree {0} is odd")]
    OddDegree(i64),
    #[error("form cannot be recovered: {0}")]
    NotRecoverable(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("minor ({row}, {col}) is not divisible by the conic equation")]
    MinorNotDivisible { row: usize, col: usize },
    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),
    #[error("unknown type tag `{0}`")]
    UnknownTag(String),
    #[error("no nondegenerate form found after {0} attempts")]
    DegenerateAfterRetries(usize),
    #[error("base point is singular: p^T A(q) vanishes at {0}")]
    BasePointSingular(String),
    #[error("invalid quadric net: {0}")]
    InvalidNet(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid scalar domain: {0}")]
    InvalidDomain(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Syntax { .. }
            | UnknownVariable(_)
            | Inhomogeneous { .. }
            | DimensionMismatch(_)
            | IndexOutOfRange { .. }
            | AsymmetricEntries(..)
            | DegreePatternViolation { .. }
            | ZeroPolynomial
            | OddDegree(_)
            | UnknownTag(_)
            | InvalidNet(_)
            | InvalidPoint(_)
            | InvalidDomain(_) => ErrorClass::Input,
            DegreeMismatch(_)
            | NotDivisible { .. }
            | NotAPerfectSquare
            | NonExpandable(_)
            | NotRecoverable(_)
            | DegenerateAfterRetries(_)
            | BasePointSingular(_)
            | InconsistentInvariants(_) => ErrorClass::Mathematical,
            InvalidAlgebra(_) | MinorNotDivisible { .. } => ErrorClass::Internal,
        }
    }
}
