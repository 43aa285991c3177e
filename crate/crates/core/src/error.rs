use thiserror::Error;

/// Errors raised by constructions, verifiers and oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("not a vertex of this graph: {0}")]
    ForeignVertex(String),
    #[error("coloring does not partition the vertex set: {0}")]
    Coverage(String),
    #[error("construction failed self-verification: {0}")]
    Certificate(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("instance too large: {0}")]
    Size(String),
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("points not in general position: {0}")]
    GeneralPosition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
