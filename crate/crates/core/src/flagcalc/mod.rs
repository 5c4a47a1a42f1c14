//! Flag densities on weighted graphs, the averaging and lifting operators,
//! the identity suite and the per-pair case analysis.
//!
//! Densities sample unlabelled vertices independently from the vertex
//! measure, with repetition; two slots holding the same vertex are treated as
//! non-adjacent twins.

mod cases;
mod eval;
mod flag;
mod identities;

pub use cases::{case_analysis, case_analysis_with, CaseAnalysisReport, CaseCheck, Cmp};
pub use eval::{lift, Evaluator, Expr};
pub use flag::{flags, types, Flag, FlagType};
pub use identities::{identity_suite, total_probability, IdentityCheck, IdentityReport, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("expected {expected} anchor vertices, got {got}")]
    AnchorArityMismatch { expected: usize, got: usize },
    #[error("anchor vertex out of range for a graph on {0} vertices")]
    VertexOutOfRange(usize),
    #[error("flag {flag} does not have type {expected}")]
    TypeMismatch { flag: String, expected: String },
    #[error("{0:?} is not an injection into the type")]
    InvalidInjection(Vec<usize>),
    #[error("graph contains a triangle")]
    NotTriangleFree,
    #[error("graph is not regular on its support")]
    NotRegular,
    #[error("({0}, {1}) is not a pair of distinct non-adjacent vertices")]
    AdjacentPair(usize, usize),
    #[error("vertex {0} has zero weight")]
    ZeroWeightVertex(usize),
    #[error("invalid choice of common neighbours: {0}")]
    InvalidChoice(String),
}
