use thiserror::Error;

use crate::diagram::DiagramError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Crate-wide error. The variants are coarse categories so that callers
/// (notably the CLI) can map them onto distinct exit statuses.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: wrong table dimensions, out-of-range indices,
    /// products across different groups, and similar shape problems.
    #[error("structural error: {0}")]
    Structural(String),

    /// Well-formed input that violates an algebraic law.
    #[error("axiom failure: {0}")]
    Axiom(String),

    /// A configured node, generator or size cap was hit.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid diagram: {0}")]
    Diagram(#[from] DiagramError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn axiom(msg: impl Into<String>) -> Self {
        Error::Axiom(msg.into())
    }

    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
}
