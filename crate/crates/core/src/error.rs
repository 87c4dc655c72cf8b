use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {u}-{v} has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {v} outside 0..{n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("ordering is not a perfect elimination ordering")]
    InvalidCertificate,
    #[error("blocks share vertex {0}")]
    BlocksNotDisjoint(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordalError {
    #[error("input graph is not chordal")]
    NotChordal,
    #[error("input graph is not connected")]
    NotConnected,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("embedding has {embedding} vertices but the graph has {graph}")]
    VertexMismatch { embedding: usize, graph: usize },
    #[error("graph has {n} vertices; brute-force search is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid embedding: {0}")]
    Invalid(String),
}
