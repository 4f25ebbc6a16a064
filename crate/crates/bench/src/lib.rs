//! Seeded inputs shared by the benchmarks in `benches/`.

use kopt_core::random::{random_cubic, random_instance};
use kopt_core::solvers::{local_search, Engine, LocalSearchOptions};
use kopt_core::TourInstance;

/// Unit-weight random cubic instance: no tour improves, so every engine
/// searches in full.
pub fn flat_cubic(n: usize) -> TourInstance {
    random_cubic(n as u64, n, 1, 1)
}

/// Small weighted instance brought to a local optimum for moves below `k`,
/// as the quasi-linear engines expect.
pub fn polished(seed: u64, n: usize, max_weight: i64, k: usize) -> TourInstance {
    let mut opts = LocalSearchOptions::new(k - 1);
    opts.engine = Engine::Oracle;
    let raw = random_instance(seed, n, 3, 1, max_weight);
    local_search(&raw, &opts)
        .expect("oracle local search")
        .instance
}
