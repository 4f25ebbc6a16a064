//! Meet-in-the-middle search over patterns with a fixed number of
//! sequential components.
//!
//! The components are split into a left group and a right group. Every
//! combination of left embeddings becomes a point whose coordinates are the
//! tour positions of the left slots that neighbour a right slot. Every
//! combination of right embeddings then asks a range tree for the best
//! compatible left combination.

use crate::instance::{Move, TourInstance, Weight};
use crate::rangesearch::{PrioritizedPoint, RangeTree};
use crate::seqswaps::SeqEmbedding;

use super::catalog::{pattern_catalog, CatalogEntry};
use super::context::{clear, consistent, place, search_entries, Best, Context, FREE, NEG, POS};
use super::SolveError;

/// Receives each consistent tuple as (slot assignment, picks, gain).
type TupleVisitor<'a> = dyn FnMut(&[usize], &[u32], Weight) -> Result<(), SolveError> + 'a;

/// Best improving k-move whose pattern has exactly `c` sequential components.
pub fn best_move_c_sequential(
    inst: &TourInstance,
    k: usize,
    c: usize,
) -> Result<Option<Move>, SolveError> {
    best_move_meet(inst, k, Some(c), 1)
}

/// Best improving k-move over patterns with `c` sequential components, or
/// over every pattern when `c` is `None`, searched by `threads` workers.
pub fn best_move_meet(
    inst: &TourInstance,
    k: usize,
    c: Option<usize>,
    threads: usize,
) -> Result<Option<Move>, SolveError> {
    let catalog = pattern_catalog(k)?;
    if let Some(c) = c.filter(|&c| c == 0 || c > k / 2) {
        return Err(SolveError::KOutOfRange {
            k: c,
            min: 1,
            max: k / 2,
        });
    }
    if k > inst.n() {
        return Ok(None);
    }
    let ctx = Context::new(inst, k);
    let entries: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| c.is_none_or(|c| e.components.len() == c))
        .collect();
    let (best, ()) = search_entries(&entries, threads, |entry, best, _| {
        meet_entry(&ctx, entry, best)
    })?;
    best.finish(inst)
}

/// Exact best embedding of one pattern by meet in the middle.
pub(crate) fn meet_entry(
    ctx: &Context,
    entry: &CatalogEntry,
    best: &mut Best,
) -> Result<(), SolveError> {
    let lists = ctx.component_lists(entry);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    let k = entry.pattern.k();
    let c = entry.components.len();
    let mut f = vec![FREE; k];
    if c == 1 {
        for emb in lists[0] {
            if best.admits(emb.gain) {
                place(&mut f, &entry.components[0].slots, emb);
                best.offer(ctx.inst, &entry.pattern, &f, emb.gain)?;
            }
        }
        return Ok(());
    }
    let owner = entry.owner();
    let (left, right) = split(entry, &owner);
    let in_left = |s: usize| left.contains(&owner[s]);
    let boundary: Vec<usize> = (0..k)
        .filter(|&s| in_left(s))
        .filter(|&s| (s > 0 && !in_left(s - 1)) || (s + 1 < k && !in_left(s + 1)))
        .collect();

    let mut points = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    let mut stack = Vec::new();
    tuples(
        entry,
        &lists,
        &left,
        &mut f,
        &mut stack,
        0,
        &mut |f, picks, gain| {
            points.push(PrioritizedPoint::new(
                boundary.iter().map(|&s| f[s] as i64).collect(),
                gain,
                points.len(),
            ));
            chosen.extend_from_slice(picks);
            Ok(())
        },
    )?;
    if points.is_empty() {
        return Ok(());
    }
    let top = points.iter().map(|p| p.priority).max().unwrap_or(0);
    let tree = RangeTree::build(points, boundary.len())?;

    let mut bx = vec![(NEG, POS); boundary.len()];
    tuples(
        entry,
        &lists,
        &right,
        &mut f,
        &mut stack,
        0,
        &mut |f, _, gain| {
            if !best.admits(gain + top) {
                return Ok(());
            }
            for (d, &s) in boundary.iter().enumerate() {
                let lo = if s > 0 && f[s - 1] != FREE {
                    f[s - 1] as i64 + 1
                } else {
                    NEG
                };
                let hi = if s + 1 < k && f[s + 1] != FREE {
                    f[s + 1] as i64 - 1
                } else {
                    POS
                };
                bx[d] = (lo, hi);
            }
            let Some(p) = tree.query_max(&bx)? else {
                return Ok(());
            };
            let total = gain + p.priority;
            if !best.admits(total) {
                return Ok(());
            }
            let mut full = f.to_vec();
            let picks = &chosen[p.payload * left.len()..(p.payload + 1) * left.len()];
            for (&comp, &i) in left.iter().zip(picks) {
                place(
                    &mut full,
                    &entry.components[comp].slots,
                    &lists[comp][i as usize],
                );
            }
            best.offer(ctx.inst, &entry.pattern, &full, total)
        },
    )?;
    Ok(())
}

/// Chooses the left group: half of the components (rounded either way),
/// minimizing the number of left slots that touch the right group.
fn split(entry: &CatalogEntry, owner: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let c = entry.components.len();
    let k = owner.len();
    let mut best: Option<(usize, u32)> = None;
    for mask in 1u32..(1 << c) - 1 {
        let size = mask.count_ones() as usize;
        if size != c.div_ceil(2) && size != c / 2 {
            continue;
        }
        let left = |s: usize| mask >> owner[s] & 1 == 1;
        let dims = (0..k)
            .filter(|&s| left(s) && ((s > 0 && !left(s - 1)) || (s + 1 < k && !left(s + 1))))
            .count();
        if best.is_none_or(|(d, _)| dims < d) {
            best = Some((dims, mask));
        }
    }
    let mask = best.expect("at least two components").1;
    (0..c).partition(|&i| mask >> i & 1 == 1)
}

/// Enumerates consistent combinations of embeddings for the listed components.
pub(crate) fn tuples(
    entry: &CatalogEntry,
    lists: &[&[SeqEmbedding]],
    comps: &[usize],
    f: &mut Vec<usize>,
    picks: &mut Vec<u32>,
    gain: Weight,
    visit: &mut TupleVisitor<'_>,
) -> Result<(), SolveError> {
    let Some((&comp, rest)) = comps.split_first() else {
        return visit(f, picks, gain);
    };
    let slots = &entry.components[comp].slots;
    for (i, emb) in lists[comp].iter().enumerate() {
        place(f, slots, emb);
        if consistent(f, slots) {
            picks.push(i as u32);
            tuples(entry, lists, rest, f, picks, gain + emb.gain, visit)?;
            picks.pop();
        }
    }
    clear(f, slots);
    Ok(())
}
