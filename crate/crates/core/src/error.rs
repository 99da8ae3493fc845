use std::fmt;

use thiserror::Error;

/// Errors raised by the arithmetic, solvers, reductions and file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("oracle input too large: {0}")]
    OracleTooLarge(String),

    #[error("dynamic-programming table too large: {cells} cells exceeds the limit of {limit}")]
    TableTooLarge { cells: u128, limit: u128 },

    #[error("state limit exceeded: more than {limit} states")]
    StateLimitExceeded { limit: usize },

    #[error("element has an odd exponent on an even-indexed generator (g_{index})")]
    NotAllEven { index: usize },

    #[error("reduction soundness violation: {0}")]
    ReductionSoundness(String),

    #[error("solver self-check failed: {0}")]
    Unsound(String),

    #[error("invalid promise: {0}")]
    InvalidPromise(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },
}

/// 1-based position in an instance file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
