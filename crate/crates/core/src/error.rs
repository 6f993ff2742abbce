use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VisError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("polygon vertices are in clockwise order")]
    NotCcw,
    #[error("viewpoint is not strictly inside the polygon")]
    ViewpointOutside,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("coordinates exceed the exact integer frame (|scaled coordinate| > 2^30)")]
    CoordinateRange,
    #[error("chain is not independent: {0}")]
    ChainNotIndependent(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("viewpoint offset places q outside the star polygon")]
    OffsetOutside,
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, VisError>;

pub(crate) fn degenerate(msg: impl Into<String>) -> VisError {
    VisError::DegenerateInput(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> VisError {
    VisError::Internal(msg.into())
}
