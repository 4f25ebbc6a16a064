//! Shared per-instance state for the pattern-based engines.

use crate::instance::{validate_swap, Move, Swap, TourInstance, Validation, Weight};
use crate::patterns::{Embedding, Pattern};
use crate::seqswaps::{SeqEmbedding, SequentialIndex};

use super::catalog::CatalogEntry;
use super::SolveError;

/// Marker for an unassigned slot.
pub(crate) const FREE: usize = usize::MAX;

/// Sentinel bounds for range queries.
pub(crate) const NEG: i64 = i64::MIN / 4;
pub(crate) const POS: i64 = i64::MAX / 4;

pub(crate) struct Context<'a> {
    pub inst: &'a TourInstance,
    pub index: SequentialIndex,
}

impl<'a> Context<'a> {
    pub fn new(inst: &'a TourInstance, max_len: usize) -> Self {
        Self {
            inst,
            index: SequentialIndex::build(inst, max_len),
        }
    }

    /// Embeddings of every component of `entry`, in component order.
    pub fn component_lists(&self, entry: &CatalogEntry) -> Vec<&[SeqEmbedding]> {
        entry
            .components
            .iter()
            .map(|c| self.index.get(&c.pattern))
            .collect()
    }
}

/// Slot pairs `(s, s + 1)` owned by different components.
pub(crate) fn cross_pairs(owner: &[usize]) -> Vec<(usize, usize)> {
    (0..owner.len().saturating_sub(1))
        .filter(|&s| owner[s] != owner[s + 1])
        .map(|s| (s, s + 1))
        .collect()
}

/// Writes a component embedding into the slot assignment.
pub(crate) fn place(f: &mut [usize], slots: &[usize], emb: &SeqEmbedding) {
    for (&s, &e) in slots.iter().zip(&emb.edges) {
        f[s] = e as usize;
    }
}

pub(crate) fn clear(f: &mut [usize], slots: &[usize]) {
    for &s in slots {
        f[s] = FREE;
    }
}

/// Whether every ordering constraint between assigned neighbouring slots
/// touching `slots` holds.
pub(crate) fn consistent(f: &[usize], slots: &[usize]) -> bool {
    slots.iter().all(|&s| {
        let left = s == 0 || f[s - 1] == FREE || f[s - 1] < f[s];
        let right = s + 1 == f.len() || f[s + 1] == FREE || f[s] < f[s + 1];
        left && right
    })
}

/// Best candidate seen so far.
pub(crate) struct Best {
    swap: Option<Swap>,
}

impl Best {
    pub fn new() -> Self {
        Self { swap: None }
    }

    pub fn gain(&self) -> Weight {
        self.swap.as_ref().map_or(0, |s| s.gain)
    }

    /// Whether a candidate of this gain can still win.
    pub fn admits(&self, gain: Weight) -> bool {
        gain > 0 && gain >= self.gain()
    }

    pub fn offer_swap(&mut self, swap: Swap) {
        if swap.gain <= 0 {
            return;
        }
        if self.swap.as_ref().is_none_or(|b| swap.better_than(b)) {
            self.swap = Some(swap);
        }
    }

    /// Offers a complete, increasing slot assignment of `pattern`.
    pub fn offer(
        &mut self,
        inst: &TourInstance,
        pattern: &Pattern,
        f: &[usize],
        gain: Weight,
    ) -> Result<(), SolveError> {
        if !self.admits(gain) {
            return Ok(());
        }
        let swap = pattern.realize(&Embedding::new(f.to_vec())?, inst)?;
        if swap.gain != gain {
            return Err(SolveError::Internal(format!(
                "gain mismatch for {pattern} at {f:?}: {} vs {gain}",
                swap.gain
            )));
        }
        self.offer_swap(swap);
        Ok(())
    }

    /// Validates the winner into a move.
    pub fn finish(self, inst: &TourInstance) -> Result<Option<Move>, SolveError> {
        let Some(swap) = self.swap else {
            return Ok(None);
        };
        match validate_swap(inst, &swap)? {
            Validation::Move(m) => Ok(Some(m)),
            Validation::Infeasible { cycles } => Err(SolveError::Internal(format!(
                "feasible pattern produced a swap with {cycles} cycles: {swap:?}"
            ))),
        }
    }
}

/// Per-search counters that can be combined across workers.
pub(crate) trait Tally: Default + Send {
    fn absorb(&mut self, other: Self);
}

impl Tally for () {
    fn absorb(&mut self, _: Self) {}
}

/// Runs `work` on every entry with `threads` workers, entries dealt round
/// robin. Each worker keeps its own best, and the bests are merged with the
/// usual tie-break, so the winner does not depend on the worker count. If
/// entries fail, the error of the earliest one is returned.
pub(crate) fn search_entries<S, F>(
    entries: &[&CatalogEntry],
    threads: usize,
    work: F,
) -> Result<(Best, S), SolveError>
where
    S: Tally,
    F: Fn(&CatalogEntry, &mut Best, &mut S) -> Result<(), SolveError> + Sync,
{
    let threads = threads.clamp(1, entries.len().max(1));
    if threads == 1 {
        let (mut best, mut tally) = (Best::new(), S::default());
        for entry in entries {
            work(entry, &mut best, &mut tally)?;
        }
        return Ok((best, tally));
    }
    let outcomes: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let work = &work;
                scope.spawn(move || {
                    let (mut best, mut tally) = (Best::new(), S::default());
                    for (i, entry) in entries.iter().enumerate().skip(t).step_by(threads) {
                        if let Err(e) = work(entry, &mut best, &mut tally) {
                            return Err((i, e));
                        }
                    }
                    Ok((best, tally))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let (mut best, mut tally) = (Best::new(), S::default());
    let mut failure: Option<(usize, SolveError)> = None;
    for outcome in outcomes {
        match outcome {
            Ok((b, s)) => {
                if let Some(swap) = b.swap {
                    best.offer_swap(swap);
                }
                tally.absorb(s);
            }
            Err((i, e)) => {
                if failure.as_ref().is_none_or(|(j, _)| i < *j) {
                    failure = Some((i, e));
                }
            }
        }
    }
    match failure {
        Some((_, e)) => Err(e),
        None => Ok((best, tally)),
    }
}
