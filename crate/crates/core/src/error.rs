use thiserror::Error;

use crate::NodeSet;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("network must have at least one node")]
    NoNodes,
    #[error("{0} nodes exceed the supported maximum of 64")]
    TooManyNodes(usize),
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("zero weight on link ({0}, {1})")]
    ZeroWeight(usize, usize),
    #[error("duplicate link ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("node {node} out of range for a network with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("node subset is empty")]
    EmptySubset,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{n} nodes exceed the exhaustive-search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("network is not undirected")]
    NotUndirected,
    #[error("subnetwork on {0:?} is not unsigned")]
    NotUnsigned(NodeSet),
    #[error("invalid action value {0}, expected +1 or -1")]
    InvalidAction(i64),
    #[error("field box lower bound exceeds upper bound at node {0}")]
    InvertedBox(usize),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
