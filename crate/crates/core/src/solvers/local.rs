//! Local search driver that applies improving moves until none is left.

use crate::instance::{apply_move, Move, TourInstance, Weight};

use super::brute::{brute_force_best_move, DEFAULT_BUDGET};
use super::dp::{best_move_dp, DecompositionKind};
use super::k8::detect_k8_with_stats;
use super::meet::best_move_meet;
use super::quasi::detect_quasilinear_with_stats;
use super::SolveError;

/// Which improving move to apply in each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// The best move of the smallest size that has one. Sizes are scanned
    /// upwards and the scan restarts after every applied move, so the
    /// quasi-linear engines always run with no smaller improving move left.
    #[default]
    First,
    /// The best move over all sizes up to the maximum.
    Best,
}

/// Which engine finds moves of a given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Quasi-linear engines where their assumptions hold, DP otherwise.
    #[default]
    Auto,
    Oracle,
    Meet,
    Dp,
}

#[derive(Debug, Clone)]
pub struct LocalSearchOptions {
    pub k_max: usize,
    pub strategy: Strategy,
    pub engine: Engine,
    /// Weight bound enabling the 8-move engine under [`Engine::Auto`].
    pub weight_bound: Option<Weight>,
    pub max_iterations: usize,
    /// Workers for the pattern-based engines.
    pub threads: usize,
}

impl LocalSearchOptions {
    pub fn new(k_max: usize) -> Self {
        Self {
            k_max,
            strategy: Strategy::First,
            engine: Engine::Auto,
            weight_bound: None,
            max_iterations: 100_000,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LocalSearchResult {
    pub instance: TourInstance,
    pub trace: Vec<Move>,
    pub initial_weight: Weight,
    pub final_weight: Weight,
}

/// Applies improving moves of size at most `k_max` until the tour is locally optimal.
pub fn local_search(
    inst: &TourInstance,
    opts: &LocalSearchOptions,
) -> Result<LocalSearchResult, SolveError> {
    if opts.k_max < 2 {
        return Err(SolveError::KOutOfRange {
            k: opts.k_max,
            min: 2,
            max: usize::MAX,
        });
    }
    let initial_weight = inst.tour_weight()?;
    let mut cur = inst.clone();
    let mut trace = Vec::new();
    let top = opts.k_max.min(inst.n());
    loop {
        if trace.len() >= opts.max_iterations {
            return Err(SolveError::IterationLimit(opts.max_iterations));
        }
        let found = match opts.strategy {
            Strategy::First => {
                let mut hit = None;
                for k in 2..=top {
                    if let Some(m) = find(&cur, k, opts, true)? {
                        hit = Some(m);
                        break;
                    }
                }
                hit
            }
            Strategy::Best => {
                let mut hit: Option<Move> = None;
                for k in 2..=top {
                    if let Some(m) = find(&cur, k, opts, false)? {
                        if hit.as_ref().is_none_or(|h| m.gain() > h.gain()) {
                            hit = Some(m);
                        }
                    }
                }
                hit
            }
        };
        let Some(m) = found else {
            break;
        };
        cur = apply_move(&cur, &m)?;
        trace.push(m);
    }
    let final_weight = cur.tour_weight()?;
    Ok(LocalSearchResult {
        instance: cur,
        trace,
        initial_weight,
        final_weight,
    })
}

fn find(
    inst: &TourInstance,
    k: usize,
    opts: &LocalSearchOptions,
    cascaded: bool,
) -> Result<Option<Move>, SolveError> {
    match opts.engine {
        Engine::Oracle => brute_force_best_move(inst, k, DEFAULT_BUDGET),
        Engine::Meet => best_move_meet(inst, k, None, opts.threads),
        Engine::Auto if cascaded && k <= 7 => {
            detect_quasilinear_with_stats(inst, k, opts.threads).map(|(m, _)| m)
        }
        Engine::Auto if cascaded && k == 8 && bounded(inst, opts.weight_bound) => {
            let bound = opts.weight_bound.expect("checked");
            detect_k8_with_stats(inst, bound, opts.threads).map(|(m, _)| m)
        }
        Engine::Dp | Engine::Auto => {
            best_move_dp(inst, k, DecompositionKind::Path, opts.threads).map(|(m, _)| m)
        }
    }
}

fn bounded(inst: &TourInstance, bound: Option<Weight>) -> bool {
    bound.is_some_and(|b| inst.edges().iter().all(|&(_, _, w)| (1..=b).contains(&w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weighted_k4() -> TourInstance {
        TourInstance::new(
            4,
            [
                (0, 1, 5),
                (1, 2, 1),
                (2, 3, 5),
                (3, 0, 1),
                (0, 2, 1),
                (1, 3, 1),
            ],
            vec![0, 1, 2, 3],
        )
        .unwrap()
    }

    #[test]
    fn k4_takes_one_move_then_stops() {
        for strategy in [Strategy::First, Strategy::Best] {
            let mut opts = LocalSearchOptions::new(4);
            opts.strategy = strategy;
            let r = local_search(&weighted_k4(), &opts).unwrap();
            assert_eq!(r.trace.len(), 1);
            assert_eq!(r.trace[0].gain(), 8);
            assert_eq!((r.initial_weight, r.final_weight), (12, 4));
            let again = local_search(&r.instance, &opts).unwrap();
            assert!(again.trace.is_empty());
        }
    }
}
