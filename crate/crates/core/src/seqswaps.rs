//! Sequential swaps: closed walks alternating between removed tour edges and
//! added graph edges.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::instance::{Swap, TourInstance, Weight};
use crate::patterns::{Embedding, Pattern, SubPattern};

/// Receives each closed walk as (removed tour edges, added chords).
type WalkSink<'a> = dyn FnMut(&[usize], &[(usize, usize)]) + 'a;

/// A component embedding as (parent slots, tour edges, gain).
pub type SlotEmbedding = (Vec<usize>, Vec<usize>, Weight);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("swap is not sequential: its edges do not form one alternating closed walk")]
    NotSequential,
    #[error("sub-pattern is not sequential")]
    NotSequentialPattern,
    #[error(transparent)]
    Instance(#[from] crate::instance::InstanceError),
}

/// Enumerates sequential `l`-swaps whose added edges are non-tour edges.
///
/// Each walk starts on the removed edge of least tour index, traversed from its
/// left endpoint, so at most `n (2(d-2))^(l-1)` walks are explored. Swaps that
/// arise from several walks are reported once.
pub fn enumerate_sequential_swaps(inst: &TourInstance, l: usize) -> Vec<Swap> {
    enumerate_sequential_swaps_counted(inst, l).0
}

/// [`enumerate_sequential_swaps`] plus the number of complete walks of `l`
/// removed edges explored, closing or not.
pub fn enumerate_sequential_swaps_counted(inst: &TourInstance, l: usize) -> (Vec<Swap>, u64) {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut walks = 0;
    if l < 2 {
        return (out, walks);
    }
    let n = inst.n();
    let mut removed = Vec::with_capacity(l);
    let mut added = Vec::with_capacity(l);
    for start in 0..n {
        removed.clear();
        added.clear();
        removed.push(start);
        let (left, right) = inst.tour_edge(start);
        walk_non_tour(
            inst,
            l,
            left,
            right,
            &mut removed,
            &mut added,
            &mut walks,
            &mut |rem, add| {
                let mut key_rem = rem.to_vec();
                key_rem.sort_unstable();
                let mut key_add: Vec<(usize, usize)> =
                    add.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                key_add.sort_unstable();
                if key_add.windows(2).any(|w| w[0] == w[1]) {
                    return;
                }
                if seen.insert((key_rem.clone(), key_add.clone())) {
                    out.push(Swap::new(inst, key_rem, key_add).expect("walks balance endpoints"));
                }
            },
        );
    }
    out.sort_by(|a, b| a.tie_key().cmp(&b.tie_key()));
    (out, walks)
}

#[allow(clippy::too_many_arguments)]
fn walk_non_tour(
    inst: &TourInstance,
    l: usize,
    home: usize,
    x: usize,
    removed: &mut Vec<usize>,
    added: &mut Vec<(usize, usize)>,
    walks: &mut u64,
    emit: &mut WalkSink<'_>,
) {
    let n = inst.n();
    let start = removed[0];
    if removed.len() == l {
        *walks += 1;
        if inst.weight(x, home).is_some() && inst.tour_edge_index(x, home).is_none() {
            added.push((x, home));
            emit(removed, added);
            added.pop();
        }
        return;
    }
    for &(y, _) in inst.neighbors(x) {
        if inst.tour_edge_index(x, y).is_some() {
            continue;
        }
        let py = inst.position(y);
        for (edge, z) in [
            (py, inst.tour()[(py + 1) % n]),
            ((py + n - 1) % n, inst.tour()[(py + n - 1) % n]),
        ] {
            if edge <= start || removed.contains(&edge) {
                continue;
            }
            removed.push(edge);
            added.push((x, y));
            walk_non_tour(inst, l, home, z, removed, added, walks, emit);
            added.pop();
            removed.pop();
        }
    }
}

/// Whether removed ∪ added is connected (equivalently: one alternating closed walk).
pub fn is_sequential_swap(inst: &TourInstance, s: &Swap) -> bool {
    find_alternating_walk(inst, s).is_some()
}

/// An alternating closed walk using every edge of `s` once, starting on the
/// least removed edge from its left endpoint. Returns `(vertex, removed index)` per step.
fn find_alternating_walk(inst: &TourInstance, s: &Swap) -> Option<Vec<(usize, usize)>> {
    let l = s.removed.len();
    if l == 0 {
        return None;
    }
    let mut used_minus = vec![false; l];
    let mut used_plus = vec![false; s.added.len()];
    let mut steps = Vec::with_capacity(l);
    let first = s.removed[0];
    let (home, right) = inst.tour_edge(first);
    used_minus[0] = true;
    steps.push((home, first));
    fn extend(
        inst: &TourInstance,
        s: &Swap,
        home: usize,
        x: usize,
        used_minus: &mut [bool],
        used_plus: &mut [bool],
        steps: &mut Vec<(usize, usize)>,
    ) -> bool {
        if steps.len() == s.removed.len() {
            // Close with the last unused added edge back to home.
            return s.added.iter().enumerate().any(|(j, &(a, b))| {
                !used_plus[j] && ((a == x && b == home) || (b == x && a == home))
            });
        }
        for j in 0..s.added.len() {
            if used_plus[j] {
                continue;
            }
            let (a, b) = s.added[j];
            let y = if a == x {
                b
            } else if b == x {
                a
            } else {
                continue;
            };
            used_plus[j] = true;
            for (i, &idx) in s.removed.iter().enumerate() {
                if used_minus[i] {
                    continue;
                }
                let (u, v) = inst.tour_edge(idx);
                let z = if u == y {
                    v
                } else if v == y {
                    u
                } else {
                    continue;
                };
                used_minus[i] = true;
                steps.push((y, idx));
                if extend(inst, s, home, z, used_minus, used_plus, steps) {
                    return true;
                }
                steps.pop();
                used_minus[i] = false;
            }
            used_plus[j] = false;
        }
        false
    }
    if extend(
        inst,
        s,
        home,
        right,
        &mut used_minus,
        &mut used_plus,
        &mut steps,
    ) {
        Some(steps)
    } else {
        None
    }
}

/// The sequential pattern obtained by relabelling along an alternating walk of `s`,
/// together with the embedding placing it on `s.removed`.
pub fn canonical_sequential_pattern(
    inst: &TourInstance,
    s: &Swap,
) -> Result<(Pattern, Embedding), SeqError> {
    let steps = find_alternating_walk(inst, s).ok_or(SeqError::NotSequential)?;
    let steps: Vec<(bool, usize)> = steps
        .iter()
        .map(|&(entry, idx)| (inst.tour()[idx] == entry, idx))
        .collect();
    let pattern = relabel_walk(&s.removed, &steps);
    Ok((
        pattern,
        Embedding::new(s.removed.clone()).expect("sorted, distinct"),
    ))
}

/// Relabels a walk given as `(enters at left endpoint, removed edge)` steps.
/// `sorted` lists the removed edges in increasing order; slot `j` is the
/// `j`-th of them.
fn relabel_walk(sorted: &[usize], steps: &[(bool, usize)]) -> Pattern {
    let l = steps.len();
    let slot_of = |idx: usize| sorted.binary_search(&idx).expect("edge in walk");
    // Pattern vertex at which each step enters and leaves its removed edge.
    let ends: Vec<(usize, usize)> = steps
        .iter()
        .map(|&(left, idx)| {
            let j = slot_of(idx);
            if left {
                (2 * j, 2 * j + 1)
            } else {
                (2 * j + 1, 2 * j)
            }
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..l).map(|i| (ends[i].1, ends[(i + 1) % l].0)).collect();
    Pattern::from_pairs(l, &pairs).expect("walk visits every slot vertex once")
}

/// An embedding of a sequential pattern with its gain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeqEmbedding {
    /// Tour-edge index per slot, strictly increasing.
    pub edges: Vec<u32>,
    pub gain: Weight,
}

/// All embeddings of one sequential pattern, found by walking the pattern's cycle.
pub fn embeddings_of_pattern(
    inst: &TourInstance,
    pattern: &Pattern,
) -> Result<Vec<SeqEmbedding>, SeqError> {
    if !pattern.is_sequential() || !pattern.is_admissible() {
        return Err(SeqError::NotSequentialPattern);
    }
    let k = pattern.k();
    // Pattern vertices in cycle order: 0, 1, mate(1), mate(1)^1, ...
    let mut order = Vec::with_capacity(2 * k);
    let mut v = 0;
    loop {
        order.push(v);
        order.push(v ^ 1);
        v = pattern.mate(v ^ 1);
        if v == 0 {
            break;
        }
    }
    let n = inst.n();
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; k];
    for e0 in 0..n {
        f[0] = e0;
        let minus = inst.tour_edge_weight(e0);
        guided(
            inst,
            &order,
            2,
            inst.tour()[(e0 + 1) % n],
            &mut f,
            minus,
            0,
            &mut out,
        );
        f[0] = usize::MAX;
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn guided(
    inst: &TourInstance,
    order: &[usize],
    at: usize,
    x: usize,
    f: &mut [usize],
    minus: Weight,
    plus: Weight,
    out: &mut Vec<SeqEmbedding>,
) {
    let n = inst.n();
    if at == order.len() {
        let home = inst.tour()[f[0]];
        if let Some(w) = chord_weight(inst, x, home) {
            out.push(SeqEmbedding {
                edges: f.iter().map(|&e| e as u32).collect(),
                gain: minus - plus - w,
            });
        }
        return;
    }
    let v = order[at];
    let (slot, side) = (v / 2, v % 2);
    for &(y, w) in inst.neighbors(x) {
        if inst.tour_edge_index(x, y).is_some() {
            continue;
        }
        let edge = (inst.position(y) + n - side) % n;
        let ordered = f
            .iter()
            .enumerate()
            .all(|(t, &ft)| ft == usize::MAX || (t < slot && ft < edge) || (t > slot && ft > edge));
        if !ordered {
            continue;
        }
        f[slot] = edge;
        let exit = inst.tour()[(edge + 1 - side) % n];
        let wm = inst.tour_edge_weight(edge);
        guided(inst, order, at + 2, exit, f, minus + wm, plus + w, out);
        f[slot] = usize::MAX;
    }
}

/// Embeddings of a sequential component, reported on the parent's slots.
pub fn embeddings_of_subpattern(
    inst: &TourInstance,
    sub: &SubPattern,
) -> Result<Vec<SlotEmbedding>, SeqError> {
    Ok(embeddings_of_pattern(inst, &sub.pattern)?
        .into_iter()
        .map(|e| {
            (
                sub.slots.clone(),
                e.edges.iter().map(|&x| x as usize).collect(),
                e.gain,
            )
        })
        .collect())
}

/// Embeddings of every sequential pattern with at most `max_len` slots,
/// collected in one pass over closed alternating walks.
#[derive(Debug, Clone, Default)]
pub struct SequentialIndex {
    max_len: usize,
    by_pattern: HashMap<Pattern, Vec<SeqEmbedding>>,
}

impl SequentialIndex {
    pub fn build(inst: &TourInstance, max_len: usize) -> Self {
        let mut by_pattern: HashMap<Pattern, Vec<SeqEmbedding>> = HashMap::new();
        let table = PositionChords::new(inst);
        let mut steps: Vec<(bool, usize)> = Vec::with_capacity(max_len);
        let mut sorted: Vec<usize> = Vec::with_capacity(max_len);
        for start in 0..inst.n() {
            steps.push((true, start));
            let mut ctx = WalkCtx {
                table: &table,
                max_len,
                start,
                steps: &mut steps,
                sorted: &mut sorted,
                out: &mut by_pattern,
            };
            ctx.walk((start + 1) % inst.n(), table.tour_weight[start], 0);
            steps.clear();
        }
        for list in by_pattern.values_mut() {
            list.sort();
        }
        Self {
            max_len,
            by_pattern,
        }
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Embeddings of a sequential pattern (empty if it never occurs).
    pub fn get(&self, pattern: &Pattern) -> &[SeqEmbedding] {
        self.by_pattern
            .get(pattern)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub fn patterns(&self) -> impl Iterator<Item = (&Pattern, &Vec<SeqEmbedding>)> {
        self.by_pattern.iter()
    }

    /// Total number of stored (pattern, embedding) pairs.
    pub fn len(&self) -> usize {
        self.by_pattern.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Weight of a graph edge that is not on the tour.
fn chord_weight(inst: &TourInstance, u: usize, v: usize) -> Option<Weight> {
    match inst.tour_edge_index(u, v) {
        Some(_) => None,
        None => inst.weight(u, v),
    }
}

/// Non-tour edges and tour-edge weights addressed by tour position, stored
/// contiguously so walks touch little memory per step.
struct PositionChords {
    n: usize,
    start: Vec<u32>,
    to: Vec<u32>,
    weight: Vec<Weight>,
    tour_weight: Vec<Weight>,
}

impl PositionChords {
    fn new(inst: &TourInstance) -> Self {
        let n = inst.n();
        let mut start = Vec::with_capacity(n + 1);
        let (mut to, mut weight) = (Vec::new(), Vec::new());
        start.push(0);
        for &v in inst.tour() {
            for &(u, w) in inst.neighbors(v) {
                if inst.tour_edge_index(v, u).is_none() {
                    to.push(inst.position(u) as u32);
                    weight.push(w);
                }
            }
            start.push(to.len() as u32);
        }
        Self {
            n,
            start,
            to,
            weight,
            tour_weight: (0..n).map(|i| inst.tour_edge_weight(i)).collect(),
        }
    }

    fn range(&self, p: usize) -> std::ops::Range<usize> {
        self.start[p] as usize..self.start[p + 1] as usize
    }

    fn chord(&self, p: usize, q: usize) -> Option<Weight> {
        self.range(p)
            .find(|&i| self.to[i] as usize == q)
            .map(|i| self.weight[i])
    }
}

struct WalkCtx<'a> {
    table: &'a PositionChords,
    max_len: usize,
    /// First removed edge; its left endpoint is where the walk closes.
    start: usize,
    steps: &'a mut Vec<(bool, usize)>,
    sorted: &'a mut Vec<usize>,
    out: &'a mut HashMap<Pattern, Vec<SeqEmbedding>>,
}

impl WalkCtx<'_> {
    /// Continues the walk from tour position `x`.
    fn walk(&mut self, x: usize, minus: Weight, plus: Weight) {
        let t = self.table;
        let n = t.n;
        let len = self.steps.len();
        if len >= 2 {
            if let Some(w) = t.chord(x, self.start) {
                self.sorted.clear();
                self.sorted.extend(self.steps.iter().map(|s| s.1));
                self.sorted.sort_unstable();
                let pattern = relabel_walk(self.sorted, self.steps);
                self.out.entry(pattern).or_default().push(SeqEmbedding {
                    edges: self.sorted.iter().map(|&e| e as u32).collect(),
                    gain: minus - plus - w,
                });
            }
        }
        if len == self.max_len {
            return;
        }
        for i in t.range(x) {
            let (y, w) = (t.to[i] as usize, t.weight[i]);
            let before = (y + n - 1) % n;
            for (left, edge, z) in [(true, y, (y + 1) % n), (false, before, before)] {
                if edge <= self.start || self.steps.iter().any(|s| s.1 == edge) {
                    continue;
                }
                self.steps.push((left, edge));
                self.walk(z, minus + t.tour_weight[edge], plus + w);
                self.steps.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{validate_swap, Validation};
    use crate::patterns::{enumerate_patterns, Universe};

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

    fn cube() -> TourInstance {
        // Q3 with a Gray-code Hamiltonian cycle.
        let mut edges = Vec::new();
        for u in 0..8usize {
            for b in 0..3 {
                let v = u ^ (1 << b);
                if u < v {
                    edges.push((u, v, 1 + ((u + v) % 3) as Weight));
                }
            }
        }
        TourInstance::new(8, edges, vec![0, 1, 3, 2, 6, 7, 5, 4]).unwrap()
    }

    #[test]
    fn plain_cycle_has_no_sequential_swaps() {
        let c =
            TourInstance::new(6, (0..6).map(|i| (i, (i + 1) % 6, 1)), (0..6).collect()).unwrap();
        assert!(enumerate_sequential_swaps(&c, 2).is_empty());
        assert!(enumerate_sequential_swaps(&c, 3).is_empty());
    }

    /// All (E-, E+) with E+ off the tour, balanced endpoints and connected union.
    fn brute_sequential(inst: &TourInstance, l: usize) -> Vec<Swap> {
        let chords: Vec<(usize, usize)> = inst
            .edges()
            .into_iter()
            .filter(|&(u, v, _)| inst.tour_edge_index(u, v).is_none())
            .map(|(u, v, _)| (u, v))
            .collect();
        let mut out = Vec::new();
        for minus in combinations(inst.n(), l) {
            for plus in combinations(chords.len(), l) {
                let added: Vec<_> = plus.iter().map(|&j| chords[j]).collect();
                if let Ok(s) = Swap::new(inst, minus.clone(), added) {
                    if connected(inst, &s) {
                        out.push(s);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.tie_key().cmp(&b.tie_key()));
        out
    }

    pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n, r, &mut Vec::new(), &mut out);
        out
    }

    fn connected(inst: &TourInstance, s: &Swap) -> bool {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        fn find(p: &mut HashMap<usize, usize>, x: usize) -> usize {
            let px = *p.entry(x).or_insert(x);
            if px == x {
                x
            } else {
                let r = find(p, px);
                p.insert(x, r);
                r
            }
        }
        let mut edges: Vec<(usize, usize)> = s.removed.iter().map(|&i| inst.tour_edge(i)).collect();
        edges.extend(&s.added);
        for (u, v) in edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent.insert(a, b);
        }
        let roots: HashSet<usize> = parent
            .keys()
            .copied()
            .collect::<Vec<_>>()
            .into_iter()
            .map(|x| find(&mut parent, x))
            .collect();
        roots.len() == 1
    }

    #[test]
    fn cube_two_swaps_match_brute_force_and_bound() {
        let q3 = cube();
        let got = enumerate_sequential_swaps(&q3, 2);
        assert_eq!(got, brute_sequential(&q3, 2));
        for l in 2..=5 {
            let (swaps, walks) = enumerate_sequential_swaps_counted(&q3, l);
            assert!(swaps.len() as u64 <= walks && walks <= 8 * 2u64.pow(l as u32 - 1));
        }
    }

    #[test]
    fn cube_three_and_four_swaps_match_brute_force() {
        let q3 = cube();
        for l in 3..=4 {
            let got = enumerate_sequential_swaps(&q3, l);
            assert!(got.len() <= 8 * 2usize.pow(l as u32 - 1));
            assert_eq!(got, brute_sequential(&q3, l), "l = {l}");
        }
    }

    #[test]
    fn emitted_swaps_validate_and_are_walks() {
        let q3 = cube();
        for l in 2..=4 {
            for s in enumerate_sequential_swaps(&q3, l) {
                let v = validate_swap(&q3, &s).unwrap();
                assert!(matches!(
                    v,
                    Validation::Move(_) | Validation::Infeasible { .. }
                ));
                assert!(is_sequential_swap(&q3, &s));
            }
        }
    }

    #[test]
    fn crossing_two_swap_relabels_to_crossing_pattern() {
        let inst = weighted_k4();
        let s = Swap::new(&inst, [0, 2], [(0, 2), (1, 3)]).unwrap();
        let (p, f) = canonical_sequential_pattern(&inst, &s).unwrap();
        assert_eq!(p.to_string(), "2; 1-3, 2-4");
        assert_eq!(p.realize(&f, &inst).unwrap(), s);
    }

    #[test]
    fn swap_fitting_two_patterns_relabels_sequentially() {
        // In K6 some sequential swaps on adjacent tour edges also fit a
        // non-sequential pattern; the relabelling must pick a sequential one.
        let mut edges = Vec::new();
        for u in 0..6 {
            for v in u + 1..6 {
                edges.push((u, v, 1 + ((3 * u + v) % 4) as Weight));
            }
        }
        let k6 = TourInstance::new(6, edges, (0..6).collect()).unwrap();
        let mut ambiguous = 0;
        for l in 3..=4 {
            let pats: Vec<Pattern> = enumerate_patterns(l, Universe::Admissible)
                .unwrap()
                .collect();
            for s in enumerate_sequential_swaps(&k6, l) {
                let f = Embedding::new(s.removed.clone()).unwrap();
                let fitting: Vec<&Pattern> = pats
                    .iter()
                    .filter(|p| p.realize(&f, &k6).map(|t| t == s).unwrap_or(false))
                    .collect();
                let (p, g) = canonical_sequential_pattern(&k6, &s).unwrap();
                assert!(p.is_sequential());
                assert!(fitting.contains(&&p));
                assert_eq!(p.realize(&g, &k6).unwrap(), s);
                if fitting.iter().any(|q| !q.is_sequential()) {
                    ambiguous += 1;
                }
            }
        }
        assert!(ambiguous > 0);
    }

    #[test]
    fn non_sequential_swap_is_rejected() {
        let q3 = cube();
        let twos = enumerate_sequential_swaps(&q3, 2);
        // Two vertex-disjoint sequential 2-swaps form a disconnected 4-swap.
        for a in &twos {
            for b in &twos {
                let ends = |s: &Swap| -> HashSet<usize> {
                    s.added.iter().flat_map(|&(u, v)| [u, v]).collect()
                };
                if ends(a).is_disjoint(&ends(b)) && a.removed.iter().all(|i| !b.removed.contains(i))
                {
                    let s = Swap::new(
                        &q3,
                        a.removed.iter().chain(&b.removed).copied(),
                        a.added.iter().chain(&b.added).copied(),
                    )
                    .unwrap();
                    assert_eq!(
                        canonical_sequential_pattern(&q3, &s),
                        Err(SeqError::NotSequential)
                    );
                    return;
                }
            }
        }
    }

    #[test]
    fn k4_embeddings_of_crossing_pair() {
        let inst = weighted_k4();
        let p: Pattern = "2; 1-3, 2-4".parse().unwrap();
        let got = embeddings_of_pattern(&inst, &p).unwrap();
        assert_eq!(
            got,
            vec![
                SeqEmbedding {
                    edges: vec![0, 2],
                    gain: 8
                },
                SeqEmbedding {
                    edges: vec![1, 3],
                    gain: 0
                },
            ]
        );
    }

    #[test]
    fn plain_cycle_has_no_chord_embeddings() {
        let c =
            TourInstance::new(6, (0..6).map(|i| (i, (i + 1) % 6, 1)), (0..6).collect()).unwrap();
        let p: Pattern = "2; 1-3, 2-4".parse().unwrap();
        assert!(embeddings_of_pattern(&c, &p).unwrap().is_empty());
    }

    #[test]
    fn index_agrees_with_guided_walks_and_realize() {
        let q3 = cube();
        let index = SequentialIndex::build(&q3, 5);
        for l in 2..=5 {
            for p in enumerate_patterns(l, Universe::Admissible).unwrap() {
                if !p.is_sequential() {
                    continue;
                }
                let guided = embeddings_of_pattern(&q3, &p).unwrap();
                assert_eq!(index.get(&p), guided.as_slice(), "{p}");
                // Independent route: try every increasing embedding.
                let mut brute = Vec::new();
                for f in combinations(8, l) {
                    let emb = Embedding::new(f.clone()).unwrap();
                    if let Ok(s) = p.realize(&emb, &q3) {
                        brute.push(SeqEmbedding {
                            edges: f.iter().map(|&x| x as u32).collect(),
                            gain: s.gain,
                        });
                    }
                }
                assert_eq!(brute, guided, "{p}");
            }
        }
    }
}
