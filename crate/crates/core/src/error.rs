use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid edge ({u}, {v}): self-loops are not allowed")]
    InvalidEdge { u: usize, v: usize },

    #[error("vertex index {v} out of range for graph on {n} vertices")]
    IndexOutOfRange { v: usize, n: usize },

    #[error("graph is not connected")]
    NotConnected,

    #[error("{0}")]
    Domain(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error at line {line}, byte {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("degenerate row operation: {0}")]
    DegenerateOp(String),

    /// Raised when a structural invariant the construction guarantees is
    /// violated at runtime (e.g. a mixed twin class). Surfacing this instead
    /// of silently choosing makes counterexamples visible.
    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
