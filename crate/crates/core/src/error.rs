use alloc::string::String;

use crate::hypergraph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge id {edge} out of range ({m} edges)")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("edge {edge} has no vertices")]
    EmptyEdge { edge: usize },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    DuplicateVertexInEdge { edge: usize, vertex: usize },
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(VertexId),
    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("vertex {0} is not covered by the partition")]
    Uncovered(VertexId),
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("negative entry on edge {0}")]
    NegativeEntry(EdgeId),
    #[error("entry on edge {0} is outside [0, 1]")]
    OutsideUnitInterval(EdgeId),
    #[error("entry on edge {0} is not an integer")]
    NonIntegral(EdgeId),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("empty vertex set")]
    EmptySet,
    #[error("every s-t cut crosses an infinite arc")]
    NoFiniteCut,
    #[error("source and sink must be distinct nodes")]
    SourceIsSink,
    #[error("node {node} out of range ({nodes} nodes)")]
    NodeOutOfRange { node: usize, nodes: usize },
    #[error("arc {0} is not incident to the source or the sink")]
    NotTerminalArc(usize),
    #[error("edge {0} is a loop (a single vertex)")]
    LoopPresent(EdgeId),
    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("edge {0} is not among the listed members")]
    NotAMember(EdgeId),
    #[error("instance too large for exhaustive search: {0}")]
    GuardExceeded(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
