use thiserror::Error;

use crate::simplex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("repeated vertex id {vertex} in facet {facet:?}")]
    RepeatedVertex { vertex: u32, facet: Vec<u32> },
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("vertex id collision: {0}")]
    VertexCollision(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("ridge {0} lies in {1} facets")]
    NotPseudomanifold(Simplex, usize),
    #[error("face cap exceeded: more than {cap} faces")]
    ResourceCap { cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("link condition fails: {0}")]
    LinkCondition(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("cancellation impossible: {0}")]
    Cancellation(String),
    #[error("gluing: {0}")]
    Gluing(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search inconclusive: {0}")]
    Inconclusive(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
