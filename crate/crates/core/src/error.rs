//! Error types shared across the crate.

use thiserror::Error;

use crate::graph::{EdgeId, SuperEdgeId, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop edge {edge} is not allowed")]
    SelfLoop { edge: EdgeId },
    #[error("duplicate edge id {edge}")]
    DuplicateEdge { edge: EdgeId },
    #[error("unknown vertex {vertex}")]
    UnknownVertex { vertex: VertexId },
    #[error("unknown edge {edge}")]
    UnknownEdge { edge: EdgeId },
    #[error("unknown super-edge {super_edge}")]
    UnknownSuperEdge { super_edge: SuperEdgeId },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("realized edge set is not a connected spanning subgraph")]
    RealizationNotSpanning,
    #[error("graph must be connected")]
    Disconnected,
    #[error("rotation system is inconsistent: {reason}")]
    BadEmbedding { reason: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("queried unknown edge {edge}")]
    UnknownEdge { edge: EdgeId },
    #[error("error probability {p} is outside [0, 1/2)")]
    InvalidProbability { p: f64 },
}

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("parameter {name}={value} is outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("oracle model mismatch: expected {expected}")]
    WrongOracleModel { expected: &'static str },
    #[error("input graph is not a tree")]
    NotATree,
    #[error("step machine already finished")]
    MachineFinished,
    #[error("machine expected an answer to its pending query")]
    MissingAnswer,
    #[error("machine received an answer without a pending query")]
    UnexpectedAnswer,
    #[error("discovery needs at least one nonempty edge set")]
    EmptyDiscovery,
    #[error("result failed validation: {reason}")]
    InvalidResult { reason: String },
}
