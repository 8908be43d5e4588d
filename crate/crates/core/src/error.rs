use thiserror::Error;

use crate::graph_core::Vertex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    InvalidVertex { vertex: u32, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid visibility: {0}")]
    Visibility(String),

    #[error("illegal move for searcher {searcher}: {from} -> {to} is not an edge")]
    IllegalMove { searcher: usize, from: Vertex, to: Vertex },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state limit exceeded: {states} states > cap {cap}{hint}")]
    StateLimit {
        states: u128,
        cap: usize,
        hint: &'static str,
    },

    #[error("timed out after expanding {states_expanded} states")]
    Timeout { states_expanded: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
