//! Instance generators for the two lower-bound reductions, plus the exact
//! searches used to check them at small scale.
//!
//! [`gen_triangle_instance`] turns a tripartite graph into a subcubic tour
//! instance that has an improving move of at most nine edges exactly when
//! the graph has a triangle. [`gen_subiso_instance`] turns a partitioned
//! subgraph-isomorphism instance into a subcubic graph with a starting tour
//! that can be improved exactly when the pattern occurs in the host.

mod hamilton;
mod subiso;
mod triangle;

use thiserror::Error;

use crate::instance::InstanceError;

pub use hamilton::{min_hamiltonian_cycle, HamiltonStats};
pub use subiso::{gen_subiso_instance, subiso_witness_tour, PatternedHost, SubisoReduction};
pub use triangle::{
    gen_triangle_instance, restricted_oracle_9opt, CatalogueSwap, Part, TriangleMode,
    TriangleReduction, TripartiteGraph,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HardnessError {
    #[error("the input graph has no edges")]
    EmptyEdgeSet,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {{{0},{1}}} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0},{1}}} joins two vertices of the same part")]
    NotIndependent(usize, usize),
    #[error("expected {expected} edge weights, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("pattern vertex {0} is isolated")]
    IsolatedPatternVertex(usize),
    #[error("host edge {{{0},{1}}} does not map to a pattern edge")]
    EdgeOutsidePattern(usize, usize),
    #[error("host vertex {vertex} has no neighbour in class {class}")]
    MissingClassNeighbour { vertex: usize, class: usize },
    #[error("class {0} has no host vertex")]
    EmptyClass(usize),
    #[error("mapping is not a partition-respecting embedding of the pattern")]
    NotAnEmbedding,
    #[error("catalogue does not belong to this instance: {0}")]
    ForeignInstance(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
