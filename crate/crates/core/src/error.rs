use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("vertex {0} has weight 0; weights must be positive")]
    ZeroWeight(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("level must be at least 1")]
    LevelZero,
    #[error("level {k} would have {projected} vertices, above the cap of {cap}")]
    LevelTooLarge {
        k: u32,
        projected: BigUint,
        cap: usize,
    },
    #[error("structure is already the completed (tilde) variant")]
    AlreadyTilde,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("branch and bound exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("{n} vertices exceed the exhaustive enumeration cap of {cap}")]
    TooLargeForExhaustive { n: usize, cap: usize },
    #[error("{n} vertices exceed the coloring search cap of {cap}")]
    TooLargeForSearch { n: usize, cap: usize },
    #[error("the given set is not independent: edge {0}-{1}")]
    NotIndependent(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("{n} vertices exceed the maximal independent set enumeration cap of {cap}")]
    TooLargeForEnumeration { n: usize, cap: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("dual certificate failed verification: {0}")]
    CertificateRejected(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("level {k} exceeds the geometry cap of {cap}")]
    LevelTooLargeForGeometry { k: u32, cap: u32 },
    #[error("segment for vertex {0} is degenerate (zero length)")]
    DegenerateSegment(VertexId),
    #[error("duplicate segment for vertex {0}")]
    DuplicateSegment(VertexId),
    #[error("replication offset could not be made collision-free after {attempts} halvings")]
    ReplicationCollision { attempts: u32 },
    #[error("weight map has {weights} entries but the family labels {labels} vertices")]
    WeightMismatch { weights: usize, labels: usize },
}
