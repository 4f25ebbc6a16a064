//! k-opt move engine for the travelling salesman problem on bounded-degree graphs.
//!
//! The crate finds best improving k-moves in a given tour with several
//! algorithms, checks finite case analyses over connection patterns by
//! exhaustive enumeration, and builds instances from triangle detection and
//! partitioned subgraph isomorphism.

pub mod hardness;
pub mod instance;
pub mod patterns;
pub mod random;
pub mod rangesearch;
pub mod seqswaps;
pub mod solvers;
pub mod verify;

pub use hardness::{
    gen_subiso_instance, gen_triangle_instance, min_hamiltonian_cycle, restricted_oracle_9opt,
    subiso_witness_tour, CatalogueSwap, HamiltonStats, HardnessError, Part, PatternedHost,
    SubisoReduction, TriangleMode, TriangleReduction, TripartiteGraph,
};
pub use instance::{
    apply_move, parse_instance, validate_swap, InstanceError, Move, Swap, TourInstance, Validation,
    Weight,
};
pub use patterns::{enumerate_patterns, Embedding, Pattern, PatternError, SubPattern, Universe};
pub use rangesearch::{PairStructure, PrioritizedPoint, RangeError, RangeTree};
pub use solvers::{
    best_move_c_sequential, best_move_meet, best_move_pathwidth_dp, best_move_tree_dp,
    brute_force_best_move, detect_k8_bounded, detect_quasilinear, local_search, Engine,
    LocalSearchOptions, LocalSearchResult, SolveError, Strategy,
};
pub use verify::{check_lemma_interactions, check_lemma_relax1, check_lemma_relax2, LemmaReport};
