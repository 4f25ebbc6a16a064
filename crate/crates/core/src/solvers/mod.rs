//! Move-finding algorithms.
//!
//! Every engine searches over feasible connection patterns and their
//! embeddings into the tour, except [`brute_force_best_move`] which
//! enumerates removed/added edge sets directly and serves as the oracle.
//! All engines report the best improving move: maximum gain, ties broken by
//! [`Swap::better_than`](crate::Swap::better_than) among the candidates the
//! engine inspects.

mod brute;
mod catalog;
mod context;
mod decomposition;
mod dp;
mod k8;
mod local;
mod meet;
mod quasi;

use thiserror::Error;

use crate::instance::{InstanceError, Weight};
use crate::patterns::PatternError;
use crate::rangesearch::RangeError;

pub use brute::{brute_force_best_move, DEFAULT_BUDGET};
pub use catalog::{pattern_catalog, CatalogEntry, MAX_CATALOG_K};
pub use decomposition::{
    exact_pathwidth, exact_treewidth, NiceDecomposition, NiceNode, PathDecomposition,
    TreeDecomposition, MAX_DECOMPOSITION_VERTICES,
};
pub use dp::{best_move_dp, best_move_pathwidth_dp, best_move_tree_dp, DecompositionKind, DpStats};
pub use k8::{detect_k8_bounded, detect_k8_with_stats, K8Stats};
pub use local::{local_search, Engine, LocalSearchOptions, LocalSearchResult, Strategy};
pub use meet::{best_move_c_sequential, best_move_meet};
pub use quasi::{detect_quasilinear, detect_quasilinear_with_stats, QuasiStats};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("k = {k} is outside the supported range {min}..={max}")]
    KOutOfRange { k: usize, min: usize, max: usize },
    #[error("search budget exceeded: {needed} candidate edge sets, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error(
        "edge {u}-{v} has weight {weight}, outside [1, {bound}]; \
         use the meet-in-the-middle engine with k = 8, c = 3 instead"
    )]
    WeightOutOfRange {
        u: usize,
        v: usize,
        weight: Weight,
        bound: Weight,
    },
    #[error("an improving move with fewer than {k} edges exists (found via pattern {pattern})")]
    PreconditionViolation { k: usize, pattern: String },
    #[error("local search did not converge within {0} iterations")]
    IterationLimit(usize),
    #[error("graph has {0} vertices, the exact decomposition supports at most 16")]
    GraphTooLarge(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Range(#[from] RangeError),
}
