//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input (bad type/rank, bad label, bad flag).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// The request is well formed but outside what this crate implements.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A configured size bound was hit.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// The nilradical of the requested parabolic is not abelian.
    #[error("nilradical is not commutative: {0}")]
    NonCommutative(String),
    /// `(k κ₀ − κ_c^p)` does not vanish on `[l, l]`.
    #[error("level condition violated: {0}")]
    LevelCondition(String),
    /// Text that does not follow the field grammar.
    #[error("parse error: {0}")]
    Parse(String),
    /// A recursion reached a base case without a configured axiom.
    #[error("unresolved base case: {0}")]
    UnresolvedBaseCase(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
