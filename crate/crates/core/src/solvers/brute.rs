//! Exhaustive reference search over removed and added edge sets.

use crate::instance::{validate_swap, Move, Swap, TourInstance, Validation, Weight};

use super::SolveError;

/// Default cap on the number of removed-edge subsets inspected.
pub const DEFAULT_BUDGET: u128 = 20_000_000;

/// Best improving move with exactly `k` removed tour edges and `k` added
/// non-tour edges.
///
/// For each set of `k` removable tour edges, every perfect matching of the
/// freed edge ends by graph chords is tried and checked with
/// [`validate_swap`]. A tour edge is removable when both endpoints have a
/// chord, since each freed end needs an added non-tour edge. The budget
/// bounds the number of removable-edge subsets.
pub fn brute_force_best_move(
    inst: &TourInstance,
    k: usize,
    budget: u128,
) -> Result<Option<Move>, SolveError> {
    if k < 2 {
        return Err(SolveError::KOutOfRange {
            k,
            min: 2,
            max: usize::MAX,
        });
    }
    let candidates: Vec<usize> = (0..inst.n())
        .filter(|&e| {
            let (a, b) = inst.tour_edge(e);
            inst.neighbors(a).len() > 2 && inst.neighbors(b).len() > 2
        })
        .collect();
    if k > candidates.len() {
        return Ok(None);
    }
    let needed = binomial(candidates.len() as u128, k as u128);
    if needed > budget {
        return Err(SolveError::BudgetExceeded { needed, budget });
    }
    let mut search = Search {
        inst,
        k,
        candidates,
        removed: Vec::with_capacity(k),
        ends: Vec::with_capacity(2 * k),
        used: vec![false; 2 * k],
        added: Vec::with_capacity(k),
        best: None,
    };
    search.subsets(0, 0);
    Ok(search.best)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

struct Search<'a> {
    inst: &'a TourInstance,
    k: usize,
    candidates: Vec<usize>,
    removed: Vec<usize>,
    ends: Vec<usize>,
    used: Vec<bool>,
    added: Vec<(usize, usize)>,
    best: Option<Move>,
}

impl Search<'_> {
    fn subsets(&mut self, from: usize, minus: Weight) {
        let n = self.candidates.len();
        if self.removed.len() == self.k {
            self.ends.clear();
            for &e in &self.removed {
                let (a, b) = self.inst.tour_edge(e);
                self.ends.push(a);
                self.ends.push(b);
            }
            self.used.iter_mut().for_each(|u| *u = false);
            self.matchings(minus, 0);
            return;
        }
        let left = self.k - self.removed.len();
        for c in from..=n - left {
            let e = self.candidates[c];
            self.removed.push(e);
            self.subsets(c + 1, minus + self.inst.tour_edge_weight(e));
            self.removed.pop();
        }
    }

    fn matchings(&mut self, minus: Weight, plus: Weight) {
        let Some(a) = self.used.iter().position(|&u| !u) else {
            self.offer(minus - plus);
            return;
        };
        self.used[a] = true;
        let u = self.ends[a];
        for b in a + 1..self.ends.len() {
            if self.used[b] {
                continue;
            }
            let v = self.ends[b];
            if u == v || self.inst.tour_edge_index(u, v).is_some() {
                continue;
            }
            let Some(w) = self.inst.weight(u, v) else {
                continue;
            };
            self.used[b] = true;
            self.added.push((u, v));
            self.matchings(minus, plus + w);
            self.added.pop();
            self.used[b] = false;
        }
        self.used[a] = false;
    }

    fn offer(&mut self, gain: Weight) {
        if gain <= 0 || self.best.as_ref().is_some_and(|b| b.gain() > gain) {
            return;
        }
        let Ok(swap) = Swap::new(
            self.inst,
            self.removed.iter().copied(),
            self.added.iter().copied(),
        ) else {
            return;
        };
        if self
            .best
            .as_ref()
            .is_some_and(|b| !swap.better_than(&b.swap))
        {
            return;
        }
        if let Ok(Validation::Move(m)) = validate_swap(self.inst, &swap) {
            self.best = Some(m);
        }
    }
}
