use thiserror::Error;

use crate::qpoly::QPoly;

#[derive(Debug, Error)]
pub enum Error {
    /// The divisor does not divide the dividend over the integers.
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: QPoly },

    /// Parameters or inputs outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {position}: unexpected character {found:?}")]
    Parse { position: usize, found: char },

    #[error("parse error: {0}")]
    Syntax(String),

    /// A guarantee that should always hold was observed to fail. This is a bug
    /// (or a counterexample to a published statement), never a user error.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
