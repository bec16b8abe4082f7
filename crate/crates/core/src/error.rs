use thiserror::Error;

use crate::graph::{EdgeId, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: EdgeId, vertex: Vertex },

    #[error("edge {edge} has endpoint {vertex} outside 0..{n}")]
    EndpointOutOfRange { edge: EdgeId, vertex: Vertex, n: usize },

    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: Vertex, degree: u32 },

    #[error("subgraph does not span vertex {0}")]
    NotSpanning(Vertex),

    #[error("multiplicity vector has {got} entries, host graph has {expected} edges")]
    MultiplicityLength { expected: usize, got: usize },

    #[error("edge {edge} has multiplicity {multiplicity}, expected at most 2")]
    MultiplicityTooLarge { edge: EdgeId, multiplicity: u32 },

    #[error("invalid closed walk: {0}")]
    InvalidWalk(String),

    #[error("graph has an odd number of vertices ({0}), no perfect matching exists")]
    OddVertexCount(usize),

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("weight vector has {got} entries, graph has {expected} edges")]
    WeightLength { expected: usize, got: usize },

    #[error("{what} budget exceeded: {actual} > {limit}")]
    BudgetExceeded { what: &'static str, limit: usize, actual: usize },

    #[error("graph has a bridge (edge {0})")]
    BridgeFound(EdgeId),

    #[error("vertex {vertex} has degree {degree}, outside the allowed range")]
    DegreeViolation { vertex: Vertex, degree: usize },

    #[error("graph is a bare cycle (no degree-3 vertex)")]
    BareCycle,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
