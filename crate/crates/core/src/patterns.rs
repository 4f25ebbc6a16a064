//! Connection patterns: perfect matchings on the `2k` endpoints of `k` removed edges.
//!
//! Vertices are 0-based here: slot `s` owns vertex `2s` (left endpoint) and
//! `2s + 1` (right endpoint). The text form uses the 1-based numbering
//! `2i - 1`, `2i` for slot `i`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::instance::{InstanceError, Swap, TourInstance};

/// Largest `k` accepted by the enumerators.
pub const MAX_ENUM_K: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("k = {0} is outside the supported range 1..={MAX_ENUM_K}")]
    KOutOfRange(usize),
    #[error("mate array is not a fixed-point-free involution")]
    NotInvolution,
    #[error("slot {0} is matched to its own removed edge")]
    ReaddsOwnEdge(usize),
    #[error("slot sets overlap")]
    Overlap,
    #[error("slot {0} out of range")]
    SlotOutOfRange(usize),
    #[error("embedding must be strictly increasing and inside the tour")]
    BadEmbedding,
    #[error("slot set is not a union of components")]
    NotClosed,
    #[error("cannot parse pattern: {0}")]
    Parse(String),
    #[error("added edge {0}-{1} is a tour edge")]
    AddsTourEdge(usize, usize),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Which matchings an enumeration yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Universe {
    /// Every matching with no slot matched to its own edge, feasible or not.
    Admissible,
    /// Every feasible matching, own-edge pairs included (645120 of them for `k = 8`).
    AppendixCompatible,
}

/// A perfect matching on `[2k]`, stored as an involution.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    mate: Vec<u8>,
}

/// Strictly increasing map from pattern slots to tour-edge indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn new(edges: Vec<usize>) -> Result<Self, PatternError> {
        if edges.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PatternError::BadEmbedding);
        }
        Ok(Self(edges))
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }
}

/// One sequential component: its slots in the parent and the relabelled matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubPattern {
    pub slots: Vec<usize>,
    pub pattern: Pattern,
}

/// Component-level view of how slots of different components sit next to each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    /// Slot sets, sorted by minimum slot.
    pub components: Vec<Vec<usize>>,
    /// Simple graph: components `a`, `b` adjacent when some slots `s`, `s + 1` split between them.
    pub adjacency: Vec<Vec<usize>>,
    /// The cycle over slots `0..k` with each component contracted: exactly `k` edges.
    pub closure: Vec<(usize, usize)>,
}

impl InteractionGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Every vertex of the closure multigraph has even degree.
    pub fn closure_is_even(&self) -> bool {
        let mut deg = vec![0usize; self.components.len()];
        for &(a, b) in &self.closure {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.iter().all(|d| d % 2 == 0)
    }
}

fn segment_mate(v: usize, k: usize) -> usize {
    if v % 2 == 1 {
        (v + 1) % (2 * k)
    } else {
        (v + 2 * k - 1) % (2 * k)
    }
}

impl Pattern {
    /// An admissible pattern: no slot is matched to its own removed edge.
    pub fn new(mate: Vec<u8>) -> Result<Self, PatternError> {
        let p = Self::unrestricted(mate)?;
        if let Some(s) = (0..p.k()).find(|&s| p.mate(2 * s) == 2 * s + 1) {
            return Err(PatternError::ReaddsOwnEdge(s));
        }
        Ok(p)
    }

    /// Any fixed-point-free involution; own-edge pairs allowed.
    pub fn unrestricted(mate: Vec<u8>) -> Result<Self, PatternError> {
        let len = mate.len();
        if len == 0 || len % 2 == 1 || len > 2 * MAX_ENUM_K * 2 {
            return Err(PatternError::NotInvolution);
        }
        for (v, &m) in mate.iter().enumerate() {
            let m = m as usize;
            if m >= len || m == v || mate[m] as usize != v {
                return Err(PatternError::NotInvolution);
            }
        }
        Ok(Self { mate })
    }

    /// Builds from 0-based vertex pairs.
    pub fn from_pairs(k: usize, pairs: &[(usize, usize)]) -> Result<Self, PatternError> {
        let mut mate = vec![u8::MAX; 2 * k];
        for &(a, b) in pairs {
            if a >= 2 * k || b >= 2 * k || mate[a] != u8::MAX || mate[b] != u8::MAX {
                return Err(PatternError::NotInvolution);
            }
            mate[a] = b as u8;
            mate[b] = a as u8;
        }
        Self::unrestricted(mate)
    }

    pub fn k(&self) -> usize {
        self.mate.len() / 2
    }

    pub fn mate(&self, v: usize) -> usize {
        self.mate[v] as usize
    }

    pub fn mates(&self) -> &[u8] {
        &self.mate
    }

    pub fn is_admissible(&self) -> bool {
        (0..self.k()).all(|s| self.mate(2 * s) != 2 * s + 1)
    }

    /// Matching edges as 0-based pairs `(a, b)`, `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.mate.len())
            .filter(|&v| v < self.mate(v))
            .map(|v| (v, self.mate(v)))
            .collect()
    }

    /// Cycles of the canonical configuration: matching plus segment edges
    /// `{2s+1, 2s+2}` and `{2k-1, 0}`.
    pub fn cycle_count(&self) -> usize {
        let k = self.k();
        let mut seen = vec![false; 2 * k];
        let mut cycles = 0;
        for s in 0..2 * k {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut v = s;
            loop {
                seen[v] = true;
                let m = self.mate(v);
                seen[m] = true;
                v = segment_mate(m, k);
                if v == s {
                    break;
                }
            }
        }
        cycles
    }

    /// Applying the pattern at pairwise non-adjacent positions yields one cycle.
    pub fn is_feasible(&self) -> bool {
        self.cycle_count() == 1
    }

    /// Slot sets of the sequential components, sorted by minimum slot.
    pub fn component_slots(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut slots = Vec::new();
            let mut v = 2 * s;
            loop {
                let slot = v / 2;
                seen[slot] = true;
                slots.push(slot);
                v = self.mate(v ^ 1);
                if v == 2 * s {
                    break;
                }
            }
            slots.sort_unstable();
            out.push(slots);
        }
        out
    }

    /// The unique split into sequential components.
    pub fn sequential_decomposition(&self) -> Vec<SubPattern> {
        self.component_slots()
            .into_iter()
            .map(|slots| {
                let pattern = self.restrict(&slots).expect("components are closed");
                SubPattern { slots, pattern }
            })
            .collect()
    }

    pub fn is_sequential(&self) -> bool {
        self.component_slots().len() == 1
    }

    /// The sub-matching on `slots`, relabelled onto `0..slots.len()`.
    pub fn restrict(&self, slots: &[usize]) -> Result<Pattern, PatternError> {
        let k = self.k();
        let mut index = vec![usize::MAX; k];
        for (t, &s) in slots.iter().enumerate() {
            if s >= k {
                return Err(PatternError::SlotOutOfRange(s));
            }
            if index[s] != usize::MAX {
                return Err(PatternError::Overlap);
            }
            index[s] = t;
        }
        let mut mate = vec![0u8; 2 * slots.len()];
        for (t, &s) in slots.iter().enumerate() {
            for side in 0..2 {
                let m = self.mate(2 * s + side);
                let ms = index[m / 2];
                if ms == usize::MAX {
                    return Err(PatternError::NotClosed);
                }
                mate[2 * t + side] = (2 * ms + m % 2) as u8;
            }
        }
        Pattern::unrestricted(mate)
    }

    /// Feasibility of the union of components covering `slots`.
    pub fn is_feasible_on(&self, slots: &[usize]) -> Result<bool, PatternError> {
        let mut sorted = slots.to_vec();
        sorted.sort_unstable();
        Ok(self.restrict(&sorted)?.is_feasible())
    }

    /// Some split of the components into two non-empty groups has both groups feasible.
    pub fn is_reducible(&self) -> bool {
        let comps = self.component_slots();
        let c = comps.len();
        if c < 2 {
            return false;
        }
        // Component 0 always goes to the first group.
        for mask in (1u32..(1 << c) - 1).filter(|m| m & 1 == 1) {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, comp) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.extend_from_slice(comp);
                } else {
                    b.extend_from_slice(comp);
                }
            }
            a.sort_unstable();
            b.sort_unstable();
            let fa = self.restrict(&a).map(|p| p.is_feasible()).unwrap_or(false);
            if fa && self.restrict(&b).map(|p| p.is_feasible()).unwrap_or(false) {
                return true;
            }
        }
        false
    }

    pub fn interaction_graph(&self) -> InteractionGraph {
        let k = self.k();
        let components = self.component_slots();
        let mut owner = vec![0usize; k];
        for (c, comp) in components.iter().enumerate() {
            for &s in comp {
                owner[s] = c;
            }
        }
        let mut adjacency = vec![Vec::new(); components.len()];
        let mut closure = Vec::with_capacity(k);
        for s in 0..k {
            let t = (s + 1) % k;
            let (a, b) = (owner[s], owner[t]);
            closure.push((a.min(b), a.max(b)));
            if t != 0 && a != b && !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        InteractionGraph {
            components,
            adjacency,
            closure,
        }
    }

    /// Exchanges slots `s` and `s + 1` (0-based): the mates of `2s`/`2s+2` and of
    /// `2s+1`/`2s+3` trade places. May produce an own-edge pair.
    pub fn swap_adjacent(&self, s: usize) -> Pattern {
        let k = self.k();
        assert!(s + 1 < k, "slot {s} has no right neighbour");
        let relabel = |v: usize| -> usize {
            match v / 2 {
                x if x == s => v + 2,
                x if x == s + 1 => v - 2,
                _ => v,
            }
        };
        let mut mate = vec![0u8; 2 * k];
        for v in 0..2 * k {
            mate[relabel(v)] = relabel(self.mate(v)) as u8;
        }
        Pattern { mate }
    }

    /// As [`Pattern::swap_adjacent`], but rejects results that re-add an own edge.
    pub fn swap_adjacent_admissible(&self, s: usize) -> Result<Pattern, PatternError> {
        if s + 1 >= self.k() {
            return Err(PatternError::SlotOutOfRange(s + 1));
        }
        let p = self.swap_adjacent(s);
        match (0..p.k()).find(|&t| p.mate(2 * t) == 2 * t + 1) {
            Some(t) => Err(PatternError::ReaddsOwnEdge(t)),
            None => Ok(p),
        }
    }

    /// Tour vertex realizing pattern vertex `v` when slot `v / 2` sits on tour edge `edge`.
    pub fn endpoint(inst: &TourInstance, edge: usize, v: usize) -> usize {
        inst.tour()[(edge + v % 2) % inst.n()]
    }

    /// The added edges for an injective slot assignment (order not enforced).
    pub fn added_edges(&self, inst: &TourInstance, f: &[usize]) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| {
                (
                    Self::endpoint(inst, f[a / 2], a),
                    Self::endpoint(inst, f[b / 2], b),
                )
            })
            .collect()
    }

    /// The swap `(E-_f, E+_f)` for an increasing embedding.
    pub fn realize(&self, f: &Embedding, inst: &TourInstance) -> Result<Swap, PatternError> {
        let f = f.edges();
        if f.len() != self.k() || f.last().is_some_and(|&e| e >= inst.n()) {
            return Err(PatternError::BadEmbedding);
        }
        self.realize_unordered(f, inst)
    }

    /// Realizes an injective, not necessarily increasing, slot assignment.
    pub fn realize_unordered(
        &self,
        f: &[usize],
        inst: &TourInstance,
    ) -> Result<Swap, PatternError> {
        if f.len() != self.k() {
            return Err(PatternError::BadEmbedding);
        }
        let added = self.added_edges(inst, f);
        if let Some(&(u, v)) = added.iter().find(|&&(u, v)| inst.weight(u, v).is_none()) {
            return Err(InstanceError::MissingEdge(u.min(v), u.max(v)).into());
        }
        if let Some(&(u, v)) = added
            .iter()
            .find(|&&(u, v)| inst.tour_edge_index(u, v).is_some())
        {
            return Err(PatternError::AddsTourEdge(u.min(v), u.max(v)));
        }
        Ok(Swap::new(inst, f.iter().copied(), added)?)
    }
}

/// Number of `s` with `s`, `s + 1` split between `x` and `y` (0-based slots).
pub fn interactions(k: usize, x: &[usize], y: &[usize]) -> Result<usize, PatternError> {
    let mut owner = vec![0u8; k];
    for (tag, set) in [(1u8, x), (2u8, y)] {
        for &s in set {
            if s >= k {
                return Err(PatternError::SlotOutOfRange(s));
            }
            if owner[s] != 0 {
                return Err(PatternError::Overlap);
            }
            owner[s] = tag;
        }
    }
    Ok((0..k.saturating_sub(1))
        .filter(|&s| owner[s] != 0 && owner[s + 1] != 0 && owner[s] != owner[s + 1])
        .count())
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.k())?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}-{}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    /// Parses `k; a-b, c-d, ...` with 1-based vertices. Own-edge pairs are accepted
    /// here; use [`Pattern::new`] on the mates to insist on admissibility.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| PatternError::Parse(m.to_string());
        let (head, body) = text.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let k: usize = head.trim().parse().map_err(|_| bad("invalid k"))?;
        if k == 0 || k > MAX_ENUM_K * 2 {
            return Err(PatternError::KOutOfRange(k));
        }
        let mut pairs = Vec::new();
        for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = item.split_once('-').ok_or_else(|| bad("edge needs `-`"))?;
            let a: usize = a.trim().parse().map_err(|_| bad("invalid vertex"))?;
            let b: usize = b.trim().parse().map_err(|_| bad("invalid vertex"))?;
            if a == 0 || b == 0 {
                return Err(bad("vertices are 1-based"));
            }
            pairs.push((a - 1, b - 1));
        }
        if pairs.len() != k {
            return Err(bad("expected exactly k edges"));
        }
        Pattern::from_pairs(k, &pairs)
    }
}

/// Lexicographic enumeration of matchings on `[2k]`.
pub struct PatternIter {
    k: usize,
    universe: Universe,
    mate: Vec<u8>,
    stack: Vec<(u8, u8)>,
    started: bool,
    done: bool,
}

const FREE: u8 = u8::MAX;

impl PatternIter {
    fn allowed(&self, v: usize, u: usize) -> bool {
        self.mate[u] == FREE && !(self.universe == Universe::Admissible && u == (v ^ 1))
    }

    /// Matches the smallest free vertices greedily; false on a dead end.
    fn fill(&mut self) -> bool {
        while let Some(v) = self.mate.iter().position(|&m| m == FREE) {
            match (v + 1..2 * self.k).find(|&u| self.allowed(v, u)) {
                Some(u) => {
                    self.mate[v] = u as u8;
                    self.mate[u] = v as u8;
                    self.stack.push((v as u8, u as u8));
                }
                None => return false,
            }
        }
        true
    }

    /// Moves to the next complete matching in lexicographic order.
    fn advance(&mut self) -> bool {
        loop {
            let Some((v, u)) = self.stack.pop() else {
                return false;
            };
            let (v, u) = (v as usize, u as usize);
            self.mate[v] = FREE;
            self.mate[u] = FREE;
            if let Some(next) = (u + 1..2 * self.k).find(|&w| self.allowed(v, w)) {
                self.mate[v] = next as u8;
                self.mate[next] = v as u8;
                self.stack.push((v as u8, next as u8));
                if self.fill() {
                    return true;
                }
                // Dead end below: keep backtracking from the deepest choice.
            }
        }
    }
}

impl Iterator for PatternIter {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        loop {
            if self.done {
                return None;
            }
            let ok = if self.started {
                self.advance()
            } else {
                self.started = true;
                self.fill() || self.advance()
            };
            if !ok {
                self.done = true;
                return None;
            }
            let p = Pattern {
                mate: self.mate.clone(),
            };
            if self.universe == Universe::Admissible || p.is_feasible() {
                return Some(p);
            }
        }
    }
}

/// Streams matchings of `universe` on `[2k]` in lexicographic order of the mate array.
pub fn enumerate_patterns(k: usize, universe: Universe) -> Result<PatternIter, PatternError> {
    if !(1..=MAX_ENUM_K).contains(&k) {
        return Err(PatternError::KOutOfRange(k));
    }
    Ok(PatternIter {
        k,
        universe,
        mate: vec![FREE; 2 * k],
        stack: Vec::new(),
        started: false,
        done: false,
    })
}

/// All feasible admissible patterns for `k`.
pub fn feasible_patterns(k: usize) -> Result<Vec<Pattern>, PatternError> {
    Ok(enumerate_patterns(k, Universe::Admissible)?
        .filter(Pattern::is_feasible)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Pattern {
        text.parse().unwrap()
    }

    #[test]
    fn k2_has_two_admissible_patterns() {
        let all: Vec<String> = enumerate_patterns(2, Universe::Admissible)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(all, vec!["2; 1-3, 2-4", "2; 1-4, 2-3"]);
        assert_eq!(
            enumerate_patterns(1, Universe::Admissible).unwrap().count(),
            0
        );
        assert!(enumerate_patterns(0, Universe::Admissible).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        for k in 1..=5 {
            let all: Vec<Pattern> = enumerate_patterns(k, Universe::Admissible)
                .unwrap()
                .collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            // Inclusion-exclusion count of matchings avoiding the k slot pairs.
            let mut expected: i64 = 0;
            let mut binom: i64 = 1;
            for j in 0..=k {
                let mut dfact: i64 = 1;
                let mut m = 2 * (k - j) as i64 - 1;
                while m > 1 {
                    dfact *= m;
                    m -= 2;
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                expected += sign * binom * dfact;
                binom = binom * (k - j) as i64 / (j as i64 + 1);
            }
            assert_eq!(all.len() as i64, expected, "k = {k}");
        }
    }

    #[test]
    fn crossing_chords_are_feasible() {
        assert!(p("2; 1-3, 2-4").is_feasible());
        assert!(!p("2; 1-4, 2-3").is_feasible());
        assert_eq!(p("2; 1-4, 2-3").cycle_count(), 2);
        // Segment reversal 3-opt: reconnect a with c, b with e, d with f.
        assert!(p("3; 1-3, 2-5, 4-6").is_feasible());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(p("2; 1-3, 2-4").component_slots(), vec![vec![0, 1]]);
        assert_eq!(
            p("4; 1-3, 2-4, 5-7, 6-8").component_slots(),
            vec![vec![0, 1], vec![2, 3]]
        );
    }

    #[test]
    fn reducibility_examples() {
        assert!(p("4; 1-3, 2-4, 5-7, 6-8").is_reducible());
        assert!(!p("2; 1-3, 2-4").is_reducible());
    }

    #[test]
    fn interaction_counts() {
        assert_eq!(interactions(4, &[0, 2], &[1, 3]).unwrap(), 3);
        assert_eq!(interactions(8, &[0, 1], &[4, 5]).unwrap(), 0);
        assert_eq!(interactions(4, &[0, 2], &[1]).unwrap(), 2);
        assert_eq!(interactions(4, &[0, 2], &[2]), Err(PatternError::Overlap));
    }

    #[test]
    fn interaction_graph_examples() {
        let g = p("4; 1-3, 2-4, 5-7, 6-8").interaction_graph();
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.edge_count(), 1);
        // Slots {0,2} and {1,3} alternate.
        let alt = p("4; 1-5, 2-6, 3-7, 4-8").interaction_graph();
        assert_eq!(alt.components, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(alt.edge_count(), 1);
        assert_eq!(alt.closure, vec![(0, 1); 4]);
    }

    #[test]
    fn swap_adjacent_on_two_opt() {
        let two_opt = p("2; 1-3, 2-4");
        // Relabelling the two slots of a crossing pair leaves it unchanged.
        assert_eq!(two_opt.swap_adjacent(0), two_opt);
        let q = p("3; 1-3, 2-5, 4-6");
        assert_eq!(q.swap_adjacent(1).swap_adjacent(1), q);
    }

    /// The "exchange the mates" reading, executed literally.
    fn swap_by_mates(p: &Pattern, s: usize) -> Pattern {
        let mut m: Vec<usize> = p.mates().iter().map(|&x| x as usize).collect();
        let mut exchange = |a: usize, b: usize| {
            let (ma, mb) = (m[a], m[b]);
            if ma == b {
                return;
            }
            m[a] = mb;
            m[mb] = a;
            m[b] = ma;
            m[ma] = b;
        };
        exchange(2 * s, 2 * s + 2);
        exchange(2 * s + 1, 2 * s + 3);
        Pattern::unrestricted(m.into_iter().map(|x| x as u8).collect()).unwrap()
    }

    #[test]
    fn swap_adjacent_matches_mate_exchange() {
        for k in 2..=5 {
            for pat in enumerate_patterns(k, Universe::Admissible).unwrap() {
                for s in 0..k - 1 {
                    assert_eq!(pat.swap_adjacent(s), swap_by_mates(&pat, s), "{pat} at {s}");
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let q = p("3; 1-3, 2-5, 4-6");
        assert_eq!(q.to_string().parse::<Pattern>().unwrap(), q);
        assert!("2; 1-3".parse::<Pattern>().is_err());
        assert!(Pattern::new(p("2; 1-2, 3-4").mates().to_vec()).is_err());
    }

    #[test]
    fn closure_is_even_for_small_k() {
        for k in 1..=6 {
            for pat in enumerate_patterns(k, Universe::Admissible).unwrap() {
                let g = pat.interaction_graph();
                assert_eq!(g.closure.len(), k);
                assert!(g.closure_is_even());
            }
        }
    }

    #[test]
    fn components_are_simple_cycles_and_partition() {
        for k in 1..=6 {
            for pat in enumerate_patterns(k, Universe::Admissible).unwrap() {
                let mut all: Vec<usize> = Vec::new();
                for sub in pat.sequential_decomposition() {
                    assert!(sub.pattern.is_sequential());
                    all.extend(&sub.slots);
                }
                all.sort_unstable();
                assert_eq!(all, (0..k).collect::<Vec<_>>());
            }
        }
    }
}
