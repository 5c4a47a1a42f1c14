//! Weighted triangle-free graphs: structural queries, twin reduction,
//! blow-ups, the vertex-count bound with its constructive witness, named
//! constructions and graph6 I/O.

pub mod catalog;
mod graph;
pub mod io;
mod witness;

pub use graph::WeightedGraph;
pub use witness::{boundedness_bound, boundedness_check, boundedness_witness, WitnessChain};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("graph is complete: no distinct non-adjacent pair")]
    CompleteGraph,
    #[error("a = 0: the vertex bound is undefined")]
    ZeroA,
    #[error("witness construction stalled at |W| = {0}; graph must be twin-free and triangle-free")]
    WitnessFailed(usize),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown catalog graph {0:?}")]
    UnknownCatalogName(String),
    #[error("invalid graph6 data: {0}")]
    Graph6(String),
    #[error("invalid weights file: {0}")]
    WeightsFile(String),
    #[error("bundled data failed validation: {0}")]
    DataInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}
