//! Quasi-linear best-move search for k ≤ 7, valid when no improving move
//! with fewer edges exists.
//!
//! Only feasible irreducible patterns are searched. Patterns with at most two
//! sequential components go through the meet-in-the-middle search with one
//! component on each side. Patterns made of two 2-swaps and one larger
//! component enumerate the larger component and query range trees for the
//! two 2-swaps. A single ordering constraint between the 2-swaps is relaxed
//! to "different tour edges"; a relaxed optimum that breaks the order fits
//! the pattern with the two slots exchanged, which is either feasible (the
//! move is kept) or reducible (a smaller improving move exists).

use crate::instance::{validate_swap, Move, TourInstance, Validation, Weight};
use crate::patterns::Pattern;
use crate::rangesearch::{PrioritizedPoint, RangeTree};
use crate::seqswaps::SeqEmbedding;

use super::catalog::{pattern_catalog, CatalogEntry};
use super::context::{place, search_entries, Best, Context, Tally, FREE};
use super::dp::{dp_entry, DecompositionKind, DpStats};
use super::meet::meet_entry;
use super::SolveError;

/// Counters describing how patterns were handled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuasiStats {
    pub patterns: usize,
    pub meet_patterns: usize,
    pub triple_patterns: usize,
    /// Relaxed optima that broke the slot order and were kept as moves.
    pub repaired: usize,
    /// Irreducible patterns with an unexpected structure, solved exactly by DP.
    pub fallbacks: usize,
}

/// Best improving k-move for k ≤ 7 under the no-smaller-move assumption.
///
/// Returns [`SolveError::PreconditionViolation`] when the search stumbles on
/// evidence of an improving move with fewer edges.
pub fn detect_quasilinear(inst: &TourInstance, k: usize) -> Result<Option<Move>, SolveError> {
    detect_quasilinear_with_stats(inst, k, 1).map(|(m, _)| m)
}

/// [`detect_quasilinear`] with `threads` workers, reporting statistics.
///
/// With the no-smaller-move assumption in place the result does not depend
/// on `threads`. Without it, which violation (if any) is reported can.
pub fn detect_quasilinear_with_stats(
    inst: &TourInstance,
    k: usize,
    threads: usize,
) -> Result<(Option<Move>, QuasiStats), SolveError> {
    if !(2..=7).contains(&k) {
        return Err(SolveError::KOutOfRange { k, min: 2, max: 7 });
    }
    let catalog = pattern_catalog(k)?;
    if k > inst.n() {
        return Ok((None, QuasiStats::default()));
    }
    let ctx = Context::new(inst, k);
    let entries: Vec<&CatalogEntry> = catalog.iter().filter(|e| !e.reducible).collect();
    let (best, stats) =
        search_entries(&entries, threads, |entry, best, stats: &mut QuasiStats| {
            stats.patterns += 1;
            let shape = entry.shape();
            if shape.len() <= 2 {
                stats.meet_patterns += 1;
                meet_entry(&ctx, entry, best)?;
            } else if shape.len() == 3 && shape[0] == 2 && shape[1] == 2 {
                stats.triple_patterns += 1;
                if !triple_entry(&ctx, entry, best, &mut stats.repaired)? {
                    stats.fallbacks += 1;
                    dp_entry(
                        &ctx,
                        entry,
                        DecompositionKind::Path,
                        best,
                        &mut DpStats::default(),
                    )?;
                }
            } else {
                stats.fallbacks += 1;
                dp_entry(
                    &ctx,
                    entry,
                    DecompositionKind::Path,
                    best,
                    &mut DpStats::default(),
                )?;
            }
            Ok(())
        })?;
    Ok((best.finish(inst)?, stats))
}

impl Tally for QuasiStats {
    fn absorb(&mut self, other: Self) {
        self.patterns += other.patterns;
        self.meet_patterns += other.meet_patterns;
        self.triple_patterns += other.triple_patterns;
        self.repaired += other.repaired;
        self.fallbacks += other.fallbacks;
    }
}

/// Maximal runs of consecutive slots not owned by `outer`.
pub(crate) fn runs(owner: &[usize], outer: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    for (s, &o) in owner.iter().enumerate() {
        if o == outer {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(s);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Open interval between the outer slots around `s`, as a closed range.
/// Missing neighbours are the sentinels `-1` and `n`.
pub(crate) fn gap(f: &[usize], owner: &[usize], outer: usize, s: usize, n: usize) -> (i64, i64) {
    let lo = (0..s)
        .rev()
        .find(|&t| owner[t] == outer)
        .map_or(-1, |t| f[t] as i64);
    let hi = (s + 1..owner.len())
        .find(|&t| owner[t] == outer)
        .map_or(n as i64, |t| f[t] as i64);
    (lo + 1, hi - 1)
}

/// Range tree over the embeddings of one component, one coordinate per slot.
pub(crate) fn embedding_tree(
    list: &[SeqEmbedding],
    exclude: Option<usize>,
) -> Result<RangeTree, SolveError> {
    let dims = list.first().map_or(1, |e| e.edges.len());
    let points: Vec<PrioritizedPoint> = list
        .iter()
        .enumerate()
        .map(|(i, e)| PrioritizedPoint::new(e.edges.iter().map(|&x| x as i64).collect(), e.gain, i))
        .collect();
    Ok(match exclude {
        Some(d) => RangeTree::build_excluding(points, dims, d)?,
        None => RangeTree::build(points, dims)?,
    })
}

/// Handles an assignment that may break the slot order at relaxed
/// constraints: an ordered one is offered directly, otherwise the exchanged
/// swap is validated and either kept or reported as a precondition violation.
pub(crate) fn offer_relaxed(
    inst: &TourInstance,
    pattern: &Pattern,
    f: &[usize],
    gain: Weight,
    best: &mut Best,
    repaired: &mut usize,
) -> Result<(), SolveError> {
    if f.windows(2).all(|w| w[0] < w[1]) {
        return best.offer(inst, pattern, f, gain);
    }
    if gain <= 0 {
        return Ok(());
    }
    let swap = pattern.realize_unordered(f, inst)?;
    match validate_swap(inst, &swap)? {
        Validation::Move(_) => {
            *repaired += 1;
            best.offer_swap(swap);
            Ok(())
        }
        Validation::Infeasible { .. } => Err(SolveError::PreconditionViolation {
            k: pattern.k(),
            pattern: pattern.to_string(),
        }),
    }
}

/// Two 2-swaps `X`, `Y` and an outer component `Z`. Returns `false` if the
/// pattern does not have the expected run structure.
pub(crate) fn triple_entry(
    ctx: &Context,
    entry: &CatalogEntry,
    best: &mut Best,
    repaired: &mut usize,
) -> Result<bool, SolveError> {
    let owner = entry.owner();
    let c = entry.components.len();
    // Any component can serve as Z as long as the other two are 2-swaps
    // whose runs are single-component or exactly one X and one Y slot.
    let plan = (0..c).rev().find_map(|z| {
        let others: Vec<usize> = (0..c).filter(|&o| o != z).collect();
        if others.iter().any(|&o| entry.components[o].slots.len() != 2) {
            return None;
        }
        let mut mixed = Vec::new();
        for run in runs(&owner, z) {
            let comps: Vec<usize> = run.iter().map(|&s| owner[s]).collect();
            if comps.iter().all(|&o| o == comps[0]) {
                continue;
            }
            if run.len() != 2 {
                return None;
            }
            mixed.push((run[0], run[1]));
        }
        (mixed.len() <= 1).then(|| (z, others[0], others[1], mixed.first().copied()))
    });
    let Some((z, x, y, link)) = plan else {
        return Ok(false);
    };
    let lists = ctx.component_lists(entry);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(true);
    }
    let (xs, ys) = (&entry.components[x].slots, &entry.components[y].slots);
    let dim_of = |slots: &[usize], s: usize| slots.iter().position(|&t| t == s);
    // Exclusion dimensions at the linked slots.
    let (dx, dy) = match link {
        Some((s, t)) => {
            let (sx, sy) = if owner[s] == x { (s, t) } else { (t, s) };
            (dim_of(xs, sx), dim_of(ys, sy))
        }
        None => (None, None),
    };
    let tx = embedding_tree(lists[x], dx)?;
    let ty = embedding_tree(lists[y], dy)?;
    let top = tx.points().iter().map(|p| p.priority).max().unwrap_or(0)
        + ty.points().iter().map(|p| p.priority).max().unwrap_or(0);
    let n = ctx.inst.n();
    let mut f = vec![FREE; entry.pattern.k()];
    let zs = &entry.components[z].slots;
    for ez in lists[z] {
        if !best.admits(ez.gain + top) {
            continue;
        }
        place(&mut f, zs, ez);
        let bx: Vec<(i64, i64)> = xs.iter().map(|&s| gap(&f, &owner, z, s, n)).collect();
        let by: Vec<(i64, i64)> = ys.iter().map(|&s| gap(&f, &owner, z, s, n)).collect();
        let (Some(px), Some(py)) = (tx.query_max(&bx)?, ty.query_max(&by)?) else {
            continue;
        };
        let (px, py) = match (dx, dy) {
            (Some(dx), Some(dy)) if px.coords[dx] == py.coords[dy] => {
                let v = px.coords[dx];
                let a = ty.query_max_excluding(&by, dy, &[v])?.map(|q| (px, q));
                let b = tx.query_max_excluding(&bx, dx, &[v])?.map(|p| (p, py));
                match (a, b) {
                    (Some(a), Some(b)) => {
                        if b.0.priority + b.1.priority > a.0.priority + a.1.priority {
                            b
                        } else {
                            a
                        }
                    }
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => continue,
                }
            }
            _ => (px, py),
        };
        let gain = ez.gain + px.priority + py.priority;
        if gain <= 0 || !best.admits(gain) {
            continue;
        }
        place(&mut f, xs, &lists[x][px.payload]);
        place(&mut f, ys, &lists[y][py.payload]);
        offer_relaxed(ctx.inst, &entry.pattern, &f, gain, best, repaired)?;
        f.iter_mut().for_each(|v| *v = FREE);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn runs_split_at_outer_slots() {
        let owner = [0, 1, 2, 0, 2, 2, 0];
        assert_eq!(runs(&owner, 0), vec![vec![1, 2], vec![4, 5]]);
        assert_eq!(runs(&owner, 2), vec![vec![0, 1], vec![3], vec![6]]);
    }

    #[test]
    fn gap_uses_sentinels() {
        let owner = [0, 1, 0];
        let f = [3, FREE, 9];
        assert_eq!(gap(&f, &owner, 0, 1, 12), (4, 8));
        let owner = [1, 0];
        let f = [FREE, 5];
        assert_eq!(gap(&f, &owner, 0, 0, 12), (0, 4));
    }

    #[test]
    fn unit_cubic_has_no_move() {
        // Prism graph: two triangles joined by a matching, all weights 1.
        let edges = [
            (0, 1),
            (1, 2),
            (2, 0),
            (3, 4),
            (4, 5),
            (5, 3),
            (0, 3),
            (1, 4),
            (2, 5),
        ];
        let inst = TourInstance::new(
            6,
            edges.iter().map(|&(u, v)| (u, v, 1)),
            vec![0, 1, 2, 5, 4, 3],
        )
        .unwrap();
        for k in 2..=6 {
            assert!(detect_quasilinear(&inst, k).unwrap().is_none());
        }
    }
}
