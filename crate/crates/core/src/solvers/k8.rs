//! Best improving 8-move for weights in `[1, W]`, valid when no improving
//! move with fewer edges exists.
//!
//! Patterns other than three sequential swaps of sizes 2, 3, 3 reuse the
//! k ≤ 7 machinery. For the 2-3-3 patterns, with `X` the 2-swap:
//!
//! * If one slot of `X` is wrapped by one 3-swap and the other slot by the
//!   other 3-swap, the two ordering constraints around the wrapped slot are
//!   relaxed to "different tour edges" for a side where the exchanged
//!   patterns are feasible or reducible.
//! * Otherwise the gains of `X` and of one 3-swap are guessed and a pair
//!   structure answers "does a compatible pair with these gains exist".

use std::collections::BTreeMap;

use crate::instance::{Move, TourInstance, Weight};
use crate::rangesearch::{PairStructure, PrioritizedPoint, RangeTree};

use super::catalog::{pattern_catalog, CatalogEntry};
use super::context::{place, search_entries, Best, Context, Tally, FREE};
use super::dp::{dp_entry, DecompositionKind, DpStats};
use super::meet::meet_entry;
use super::quasi::{embedding_tree, gap, offer_relaxed, runs, triple_entry};
use super::SolveError;

/// Counters describing how patterns were handled.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct K8Stats {
    pub patterns: usize,
    pub meet_patterns: usize,
    pub triple_patterns: usize,
    pub wrapped_patterns: usize,
    pub guessed_patterns: usize,
    pub repaired: usize,
    pub fallbacks: usize,
}

/// Best improving 8-move for weights in `[1, bound]`.
pub fn detect_k8_bounded(inst: &TourInstance, bound: Weight) -> Result<Option<Move>, SolveError> {
    detect_k8_with_stats(inst, bound, 1).map(|(m, _)| m)
}

/// [`detect_k8_bounded`] with `threads` workers, reporting statistics.
///
/// With the no-smaller-move assumption in place the result does not depend
/// on `threads`. Without it, which violation (if any) is reported can.
pub fn detect_k8_with_stats(
    inst: &TourInstance,
    bound: Weight,
    threads: usize,
) -> Result<(Option<Move>, K8Stats), SolveError> {
    for (u, v, w) in inst.edges() {
        if !(1..=bound).contains(&w) {
            return Err(SolveError::WeightOutOfRange {
                u,
                v,
                weight: w,
                bound,
            });
        }
    }
    let catalog = pattern_catalog(8)?;
    if inst.n() < 8 {
        return Ok((None, K8Stats::default()));
    }
    let ctx = Context::new(inst, 8);
    let entries: Vec<&CatalogEntry> = catalog.iter().filter(|e| !e.reducible).collect();
    let (best, stats) = search_entries(&entries, threads, |entry, best, stats: &mut K8Stats| {
        stats.patterns += 1;
        let shape = entry.shape();
        let handled = match shape.as_slice() {
            [_] | [_, _] => {
                stats.meet_patterns += 1;
                meet_entry(&ctx, entry, best)?;
                true
            }
            [2, 2, 4] => {
                stats.triple_patterns += 1;
                triple_entry(&ctx, entry, best, &mut stats.repaired)?
            }
            [2, 3, 3] => match plan(entry) {
                Some(Plan::Wrapped { x, a, wrap, outer }) => {
                    stats.wrapped_patterns += 1;
                    wrapped_entry(&ctx, entry, x, a, wrap, outer, best, &mut stats.repaired)?;
                    true
                }
                Some(Plan::Guessed { x, y, z, links }) => {
                    stats.guessed_patterns += 1;
                    guessed_entry(&ctx, entry, x, y, z, &links, bound, best)?;
                    true
                }
                None => false,
            },
            _ => false,
        };
        if !handled {
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

impl Tally for K8Stats {
    fn absorb(&mut self, other: Self) {
        self.patterns += other.patterns;
        self.meet_patterns += other.meet_patterns;
        self.triple_patterns += other.triple_patterns;
        self.wrapped_patterns += other.wrapped_patterns;
        self.guessed_patterns += other.guessed_patterns;
        self.repaired += other.repaired;
        self.fallbacks += other.fallbacks;
    }
}

/// How a 2-3-3 pattern is searched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Plan {
    /// Slot `a` of `x` sits between two slots of `wrap`; `outer` is enumerated.
    Wrapped {
        x: usize,
        a: usize,
        wrap: usize,
        outer: usize,
    },
    /// Gains of `x` and `y` are guessed for every embedding of `z`.
    /// `links` are the interacting slot pairs `(x slot, y slot)`.
    Guessed {
        x: usize,
        y: usize,
        z: usize,
        links: Vec<(usize, usize)>,
    },
}

/// Number of interactions between two slot sets.
fn interaction_count(owner: &[usize], a: usize, b: usize) -> usize {
    owner
        .windows(2)
        .filter(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a))
        .count()
}

/// Whether slot `a` has both neighbours in component `c`.
fn wrapped_by(owner: &[usize], a: usize, c: usize) -> bool {
    a >= 1 && a + 1 < owner.len() && owner[a - 1] == c && owner[a + 1] == c
}

/// Chooses the search plan for a 2-3-3 pattern, or `None` if neither plan fits.
pub(crate) fn plan(entry: &CatalogEntry) -> Option<Plan> {
    let owner = entry.owner();
    let k = owner.len();
    let x = (0..3).find(|&c| entry.components[c].slots.len() == 2)?;
    let threes: Vec<usize> = (0..3).filter(|&c| c != x).collect();
    let (i, j) = (entry.components[x].slots[0], entry.components[x].slots[1]);
    // Wrapped case: one X slot wrapped by each 3-swap.
    for (p, q) in [(i, j), (j, i)] {
        for (c1, c2) in [(threes[0], threes[1]), (threes[1], threes[0])] {
            if !(wrapped_by(&owner, p, c1) && wrapped_by(&owner, q, c2)) {
                continue;
            }
            for (a, wrap, outer) in [(p, c1, c2), (q, c2, c1)] {
                let clear_two = |t: Option<usize>| t.is_none_or(|t| t >= k || owner[t] != wrap);
                let side_ok = |s: usize| {
                    let m = entry.pattern.swap_adjacent(s);
                    m.is_admissible() && (m.is_feasible() || m.is_reducible())
                };
                if clear_two(a.checked_sub(2))
                    && clear_two(Some(a + 2))
                    && side_ok(a)
                    && side_ok(a - 1)
                {
                    return wrapped_shape_ok(&owner, x, a, wrap, outer).then_some(Plan::Wrapped {
                        x,
                        a,
                        wrap,
                        outer,
                    });
                }
            }
            return None;
        }
    }
    // Guessed case: prefer the 3-swap with fewer interactions with X, and
    // among ties one whose links fit the pair queries.
    let mut options: Vec<(usize, usize, usize)> = threes
        .iter()
        .map(|&y| {
            let z = if y == threes[0] { threes[1] } else { threes[0] };
            (interaction_count(&owner, x, y), y, z)
        })
        .collect();
    options.sort();
    let fewest = options[0].0;
    options
        .into_iter()
        .filter(|o| o.0 == fewest)
        .find_map(|(_, y, z)| {
            let links = guessed_links(&owner, x, y, z)?;
            Some(Plan::Guessed { x, y, z, links })
        })
}

/// Runs around the outer component must be single-component except the
/// wrapped run of exactly three slots.
fn wrapped_shape_ok(owner: &[usize], x: usize, a: usize, wrap: usize, outer: usize) -> bool {
    runs(owner, outer).iter().all(|run| {
        if run.contains(&a) {
            run == &[a - 1, a, a + 1] && owner[a] == x && owner[a - 1] == wrap
        } else {
            run.iter().all(|&s| owner[s] == owner[run[0]])
        }
    })
}

/// Interacting `(x slot, y slot)` pairs if they fit the pair queries: at most
/// two, with distinct slots on each side.
fn guessed_links(owner: &[usize], x: usize, y: usize, z: usize) -> Option<Vec<(usize, usize)>> {
    let mut links = Vec::new();
    for run in runs(owner, z) {
        for w in run.windows(2) {
            match (owner[w[0]], owner[w[1]]) {
                (a, b) if a == x && b == y => links.push((w[0], w[1])),
                (a, b) if a == y && b == x => links.push((w[1], w[0])),
                _ => {}
            }
        }
    }
    let distinct = |sel: fn(&(usize, usize)) -> usize| {
        let mut v: Vec<usize> = links.iter().map(sel).collect();
        v.sort_unstable();
        v.dedup();
        v.len() == links.len()
    };
    (links.len() <= 2 && distinct(|l| l.0) && distinct(|l| l.1)).then_some(links)
}

/// Wrapped case: enumerate `outer`, relax both constraints around slot `a`.
#[allow(clippy::too_many_arguments)]
fn wrapped_entry(
    ctx: &Context,
    entry: &CatalogEntry,
    x: usize,
    a: usize,
    wrap: usize,
    outer: usize,
    best: &mut Best,
    repaired: &mut usize,
) -> Result<(), SolveError> {
    let lists = ctx.component_lists(entry);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    let owner = entry.owner();
    let xs = &entry.components[x].slots;
    let ws = &entry.components[wrap].slots;
    let os = &entry.components[outer].slots;
    let da = xs.iter().position(|&s| s == a).expect("a is an X slot");
    let dl = ws
        .iter()
        .position(|&s| s == a - 1)
        .expect("a - 1 is wrapped");
    let dr = ws
        .iter()
        .position(|&s| s == a + 1)
        .expect("a + 1 is wrapped");
    let tx = embedding_tree(lists[x], Some(da))?;
    let tw = embedding_tree(lists[wrap], Some(dr))?;
    let top = tx.points().iter().map(|p| p.priority).max().unwrap_or(0)
        + tw.points().iter().map(|p| p.priority).max().unwrap_or(0);
    let n = ctx.inst.n();
    let mut f = vec![FREE; owner.len()];
    for eo in lists[outer] {
        if !best.admits(eo.gain + top) {
            continue;
        }
        place(&mut f, os, eo);
        let bx: Vec<(i64, i64)> = xs.iter().map(|&s| gap(&f, &owner, outer, s, n)).collect();
        let bw: Vec<(i64, i64)> = ws.iter().map(|&s| gap(&f, &owner, outer, s, n)).collect();
        let Some(ystar) = tw.query_max(&bw)? else {
            continue;
        };
        let forbidden = [ystar.coords[dl], ystar.coords[dr]];
        let mut cands: Vec<(&PrioritizedPoint, &PrioritizedPoint)> = Vec::new();
        if let Some(p) = tx.query_max_excluding(&bx, da, &forbidden)? {
            cands.push((p, ystar));
        }
        for &v in &forbidden {
            let mut fixed = bx.clone();
            fixed[da] = (v, v);
            let Some(p) = tx.query_max(&fixed)? else {
                continue;
            };
            if let Some(q) = best_avoiding(&tw, &bw, dl, dr, v)? {
                cands.push((p, q));
            }
        }
        let Some(&(p, q)) = cands.iter().reduce(|u, v| {
            if v.0.priority + v.1.priority > u.0.priority + u.1.priority {
                v
            } else {
                u
            }
        }) else {
            continue;
        };
        let gain = eo.gain + p.priority + q.priority;
        if gain <= 0 || !best.admits(gain) {
            continue;
        }
        place(&mut f, xs, &lists[x][p.payload]);
        place(&mut f, ws, &lists[wrap][q.payload]);
        offer_relaxed(ctx.inst, &entry.pattern, &f, gain, best, repaired)?;
        f.iter_mut().for_each(|v| *v = FREE);
    }
    Ok(())
}

/// Best point in `bx` whose coordinates on `dl` and `dr` both differ from `v`.
/// The tree excludes on `dr`; `dl` is handled by splitting its interval.
fn best_avoiding<'t>(
    tree: &'t RangeTree,
    bx: &[(i64, i64)],
    dl: usize,
    dr: usize,
    v: i64,
) -> Result<Option<&'t PrioritizedPoint>, SolveError> {
    let (lo, hi) = bx[dl];
    let mut out: Option<&PrioritizedPoint> = None;
    for part in [(lo, hi.min(v - 1)), (lo.max(v + 1), hi)] {
        let mut b = bx.to_vec();
        b[dl] = part;
        if let Some(p) = tree.query_max_excluding(&b, dr, &[v])? {
            if out.is_none_or(|o| {
                p.priority > o.priority || (p.priority == o.priority && p.payload < o.payload)
            }) {
                out = Some(p);
            }
        }
    }
    Ok(out)
}

/// Guessed case: for every embedding of `z` and every gain pair, ask the
/// pair structure for compatible embeddings of `x` and `y`.
#[allow(clippy::too_many_arguments)]
fn guessed_entry(
    ctx: &Context,
    entry: &CatalogEntry,
    x: usize,
    y: usize,
    z: usize,
    links: &[(usize, usize)],
    bound: Weight,
    best: &mut Best,
) -> Result<(), SolveError> {
    let lists = ctx.component_lists(entry);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    let owner = entry.owner();
    let xs = &entry.components[x].slots;
    let ys = &entry.components[y].slots;
    let zs = &entry.components[z].slots;
    let n = ctx.inst.n();
    let mut f = vec![FREE; owner.len()];

    if links.is_empty() {
        let tx = embedding_tree(lists[x], None)?;
        let ty = embedding_tree(lists[y], None)?;
        for ez in lists[z] {
            place(&mut f, zs, ez);
            let bx: Vec<(i64, i64)> = xs.iter().map(|&s| gap(&f, &owner, z, s, n)).collect();
            let by: Vec<(i64, i64)> = ys.iter().map(|&s| gap(&f, &owner, z, s, n)).collect();
            let (Some(p), Some(q)) = (tx.query_max(&bx)?, ty.query_max(&by)?) else {
                continue;
            };
            let gain = ez.gain + p.priority + q.priority;
            if best.admits(gain) {
                place(&mut f, xs, &lists[x][p.payload]);
                place(&mut f, ys, &lists[y][q.payload]);
                best.offer(ctx.inst, &entry.pattern, &f, gain)?;
                f.iter_mut().for_each(|v| *v = FREE);
            }
        }
        return Ok(());
    }

    // Coordinate layout. Q (from X): linked slots first, then the rest.
    // P (from Y): linked slots in the same order, then the rest.
    // A link with the X slot first needs the sign flipped so that the
    // pair query's "P before Q" reads "Y after X".
    let sign: Vec<i64> = links
        .iter()
        .map(|&(sx, sy)| if sx < sy { -1 } else { 1 })
        .collect();
    let mut q_slots: Vec<(usize, i64)> = links.iter().zip(&sign).map(|(l, &g)| (l.0, g)).collect();
    q_slots.extend(
        xs.iter()
            .filter(|s| !links.iter().any(|l| l.0 == **s))
            .map(|&s| (s, 1)),
    );
    let mut p_slots: Vec<(usize, i64)> = links.iter().zip(&sign).map(|(l, &g)| (l.1, g)).collect();
    p_slots.extend(
        ys.iter()
            .filter(|s| !links.iter().any(|l| l.1 == **s))
            .map(|&s| (s, 1)),
    );
    let pos = |slots: &[usize], s: usize| {
        slots
            .iter()
            .position(|&t| t == s)
            .expect("slot of component")
    };
    let coords = |layout: &[(usize, i64)], slots: &[usize], edges: &[u32]| -> Vec<i64> {
        layout
            .iter()
            .map(|&(s, g)| g * edges[pos(slots, s)] as i64)
            .collect()
    };

    // Bucket embeddings by gain and build one structure per gain pair.
    let mut by_gain_x: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, e) in lists[x].iter().enumerate() {
        by_gain_x.entry(e.gain).or_default().push(i);
    }
    let mut by_gain_y: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, e) in lists[y].iter().enumerate() {
        by_gain_y.entry(e.gain).or_default().push(i);
    }
    if by_gain_x.keys().any(|&g| g.abs() > 2 * bound)
        || by_gain_y.keys().any(|&g| g.abs() > 3 * bound)
    {
        return Err(SolveError::Internal(
            "embedding gain outside the guessed range".into(),
        ));
    }
    struct Bucket {
        gain: Weight,
        xi: Vec<usize>,
        yi: Vec<usize>,
        pairs: PairStructure,
    }
    let mut buckets = Vec::new();
    for (&gx, xi) in &by_gain_x {
        for (&gy, yi) in &by_gain_y {
            let q: Vec<[i64; 2]> = xi
                .iter()
                .map(|&i| {
                    let c = coords(&q_slots, xs, &lists[x][i].edges);
                    [c[0], c[1]]
                })
                .collect();
            let p: Vec<[i64; 3]> = yi
                .iter()
                .map(|&i| {
                    let c = coords(&p_slots, ys, &lists[y][i].edges);
                    [c[0], c[1], c[2]]
                })
                .collect();
            buckets.push(Bucket {
                gain: gx + gy,
                xi: xi.clone(),
                yi: yi.clone(),
                pairs: PairStructure::build(p, q),
            });
        }
    }
    // Descending total gain: the first hit per embedding of z is its best.
    buckets.sort_by_key(|b| std::cmp::Reverse(b.gain));

    let range = |f: &[usize], s: usize, g: i64| -> (i64, i64) {
        let (lo, hi) = gap(f, &owner, z, s, n);
        if g > 0 {
            (lo, hi)
        } else {
            (-hi, -lo)
        }
    };
    for ez in lists[z] {
        place(&mut f, zs, ez);
        let rp: Vec<(i64, i64)> = p_slots.iter().map(|&(s, g)| range(&f, s, g)).collect();
        let rq: Vec<(i64, i64)> = q_slots.iter().map(|&(s, g)| range(&f, s, g)).collect();
        for b in &buckets {
            let gain = ez.gain + b.gain;
            if !best.admits(gain) {
                break;
            }
            let hit = if links.len() == 1 {
                b.pairs.query_disjoint(rp[0], rp[1], rq[1], rp[2])
            } else {
                b.pairs.query_nested(rp[0], rp[1], rp[2])
            };
            if let Some((pi, qi)) = hit {
                place(&mut f, xs, &lists[x][b.xi[qi]]);
                place(&mut f, ys, &lists[y][b.yi[pi]]);
                best.offer(ctx.inst, &entry.pattern, &f, gain)?;
                f.iter_mut().for_each(|v| *v = FREE);
                place(&mut f, zs, ez);
                break;
            }
        }
    }
    Ok(())
}
