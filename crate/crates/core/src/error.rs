use thiserror::Error;

use crate::metric::MetricError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot pick an element from an empty set")]
    EmptySet,
    #[error("center set is empty")]
    EmptyCenters,
    #[error("k = {k} is outside 1..={n}")]
    BadK { k: usize, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("index {index} is outside 1..={max}")]
    BadIndex { index: usize, max: usize },
    #[error("instance has no objects")]
    EmptyInstance,
    #[error("{what} = {size} exceeds the oracle limit {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("instance violates assumption {0}")]
    Invariant(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
