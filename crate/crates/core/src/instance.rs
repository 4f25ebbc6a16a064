//! Weighted graphs with a distinguished Hamiltonian tour.
//!
//! Tour edge `i` joins `tour[i]` (its left endpoint) and `tour[i + 1 mod n]`
//! (its right endpoint). Pattern vertices `2i` and `2i + 1` (0-based) name
//! these two endpoints.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge weights. Sums are checked; overflow is an error.
pub type Weight = i64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("tour is not Hamiltonian: {0}")]
    NotHamiltonian(String),
    #[error("edge {{{u},{v}}} listed twice with weights {first} and {second}")]
    ConflictingWeight {
        u: usize,
        v: usize,
        first: Weight,
        second: Weight,
    },
    #[error("edge {{{u},{v}}} listed twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {vertex} has degree {degree}, above the declared bound {bound}")]
    DegreeExceeded {
        vertex: usize,
        degree: usize,
        bound: usize,
    },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("weight sum overflows 64-bit integers")]
    Overflow,
    #[error("tour edge index {0} out of range")]
    NotTourEdge(usize),
    #[error("edge {{{0},{1}}} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("removed and added edges have different endpoint multisets")]
    EndpointMismatch,
    #[error("move is stale: tour edge {index} is no longer {{{u},{v}}}")]
    StaleMove { index: usize, u: usize, v: usize },
    #[error("move does not produce a Hamiltonian cycle ({cycles} cycles)")]
    NotAMove { cycles: usize },
}

pub(crate) fn checked_sum<I: IntoIterator<Item = Weight>>(it: I) -> Result<Weight, InstanceError> {
    it.into_iter()
        .try_fold(0i64, |acc, w| acc.checked_add(w))
        .ok_or(InstanceError::Overflow)
}

fn ordered(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple weighted graph together with a Hamiltonian cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TourInstance {
    adjacency: Vec<Vec<(usize, Weight)>>,
    tour: Vec<usize>,
    position: Vec<usize>,
    degree_bound: usize,
}

impl TourInstance {
    /// Builds an instance; the degree bound is the observed maximum degree.
    pub fn new<I>(n: usize, edges: I, tour: Vec<usize>) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        Self::with_degree_bound(n, edges, tour, None)
    }

    /// Builds an instance and rejects vertices whose degree exceeds `bound`.
    pub fn with_degree_bound<I>(
        n: usize,
        edges: I,
        tour: Vec<usize>,
        bound: Option<usize>,
    ) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let mut adjacency: Vec<Vec<(usize, Weight)>> = vec![Vec::new(); n];
        for (u, v, w) in edges {
            if u >= n {
                return Err(InstanceError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(InstanceError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(InstanceError::SelfLoop(u));
            }
            if let Some(&(_, first)) = adjacency[u].iter().find(|&&(x, _)| x == v) {
                let (a, b) = ordered(u, v);
                return Err(if first == w {
                    InstanceError::DuplicateEdge { u: a, v: b }
                } else {
                    InstanceError::ConflictingWeight {
                        u: a,
                        v: b,
                        first,
                        second: w,
                    }
                });
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        let degree_bound = bound.unwrap_or(max_degree);
        if let Some((vertex, list)) = adjacency
            .iter()
            .enumerate()
            .find(|(_, l)| l.len() > degree_bound)
        {
            return Err(InstanceError::DegreeExceeded {
                vertex,
                degree: list.len(),
                bound: degree_bound,
            });
        }
        let position = Self::check_tour(n, &tour, &adjacency)?;
        Ok(Self {
            adjacency,
            tour,
            position,
            degree_bound,
        })
    }

    fn check_tour(
        n: usize,
        tour: &[usize],
        adjacency: &[Vec<(usize, Weight)>],
    ) -> Result<Vec<usize>, InstanceError> {
        if n < 3 {
            return Err(InstanceError::NotHamiltonian(format!(
                "a tour needs at least 3 vertices, got {n}"
            )));
        }
        if tour.len() != n {
            return Err(InstanceError::NotHamiltonian(format!(
                "tour lists {} vertices, expected {n}",
                tour.len()
            )));
        }
        let mut position = vec![usize::MAX; n];
        for (i, &v) in tour.iter().enumerate() {
            if v >= n {
                return Err(InstanceError::VertexOutOfRange(v));
            }
            if position[v] != usize::MAX {
                return Err(InstanceError::NotHamiltonian(format!(
                    "vertex {v} appears twice"
                )));
            }
            position[v] = i;
        }
        for i in 0..n {
            let (u, v) = (tour[i], tour[(i + 1) % n]);
            if adjacency[u].binary_search_by_key(&v, |&(x, _)| x).is_err() {
                return Err(InstanceError::NotHamiltonian(format!(
                    "consecutive tour vertices {u} and {v} are not adjacent"
                )));
            }
        }
        Ok(position)
    }

    /// Same graph with a different tour.
    pub fn with_tour(&self, tour: Vec<usize>) -> Result<Self, InstanceError> {
        let position = Self::check_tour(self.n(), &tour, &self.adjacency)?;
        Ok(Self {
            adjacency: self.adjacency.clone(),
            tour,
            position,
            degree_bound: self.degree_bound,
        })
    }

    pub fn n(&self) -> usize {
        self.tour.len()
    }

    pub fn tour(&self) -> &[usize] {
        &self.tour
    }

    /// Index of `v` in the tour.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, Weight)] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Weight> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    /// Endpoints `(left, right)` of tour edge `i`.
    pub fn tour_edge(&self, i: usize) -> (usize, usize) {
        let n = self.n();
        (self.tour[i % n], self.tour[(i + 1) % n])
    }

    pub fn tour_edge_weight(&self, i: usize) -> Weight {
        let (u, v) = self.tour_edge(i);
        self.weight(u, v).expect("tour edges are graph edges")
    }

    /// Tour index of edge `{u, v}` if it lies on the tour.
    pub fn tour_edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let n = self.n();
        let (pu, pv) = (self.position[u], self.position[v]);
        if (pu + 1) % n == pv {
            Some(pu)
        } else if (pv + 1) % n == pu {
            Some(pv)
        } else {
            None
        }
    }

    /// All edges as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize, Weight)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adjacency.iter().enumerate() {
            for &(v, w) in list {
                if u < v {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn tour_weight(&self) -> Result<Weight, InstanceError> {
        checked_sum((0..self.n()).map(|i| self.tour_edge_weight(i)))
    }

    /// Parses the line-oriented instance format.
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        parse_instance(text)
    }

    /// Canonical serialization: edges sorted by (min endpoint, max endpoint).
    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n(), edges.len(), self.degree_bound);
        let tour: Vec<String> = self.tour.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", tour.join(" "));
        for (u, v, w) in edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
}

fn tokenize(raw: &str, line: usize) -> Tokens<'_> {
    let mut items = Vec::new();
    let mut start = None;
    for (i, ch) in raw.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                items.push((s + 1, &raw[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        items.push((s + 1, &raw[s..]));
    }
    Tokens { line, items }
}

impl Tokens<'_> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> InstanceError {
        InstanceError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn expect_len(&self, len: usize) -> Result<(), InstanceError> {
        if self.items.len() == len {
            return Ok(());
        }
        let column = self
            .items
            .get(len)
            .map(|t| t.0)
            .or_else(|| self.items.last().map(|t| t.0 + t.1.len()))
            .unwrap_or(1);
        Err(self.syntax(
            column,
            format!("expected {len} fields, found {}", self.items.len()),
        ))
    }

    fn number<T: std::str::FromStr>(&self, idx: usize) -> Result<T, InstanceError> {
        let (column, tok) = self.items[idx];
        tok.parse()
            .map_err(|_| self.syntax(column, format!("invalid number `{tok}`")))
    }
}

/// Parses an instance file: header `n m d`, the tour, then `m` lines `u v w`.
pub fn parse_instance(text: &str) -> Result<TourInstance, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let eof = |line: usize| InstanceError::Syntax {
        line,
        column: 1,
        message: "unexpected end of input".into(),
    };
    let (hl, header) = lines.next().ok_or_else(|| eof(1))?;
    let header = tokenize(header, hl);
    header.expect_len(3)?;
    let n: usize = header.number(0)?;
    let m: usize = header.number(1)?;
    let d: usize = header.number(2)?;

    let (tl, tour_line) = lines.next().ok_or_else(|| eof(hl + 1))?;
    let tour_tokens = tokenize(tour_line, tl);
    let mut tour = Vec::with_capacity(tour_tokens.items.len());
    for idx in 0..tour_tokens.items.len() {
        tour.push(tour_tokens.number::<usize>(idx)?);
    }

    let mut edges = Vec::with_capacity(m);
    for (ln, raw) in lines {
        let toks = tokenize(raw, ln);
        toks.expect_len(3)?;
        let u: usize = toks.number(0)?;
        let v: usize = toks.number(1)?;
        let w: Weight = toks.number(2)?;
        for (idx, x) in [(0, u), (1, v)] {
            if x >= n {
                return Err(toks.syntax(toks.items[idx].0, format!("vertex {x} out of range")));
            }
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(InstanceError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    TourInstance::with_degree_bound(n, edges, tour, Some(d))
}

/// An exchange of tour edges: `removed` are tour-edge indices, `added` vertex pairs.
///
/// `added` is a multiset; a repeated pair is kept so that cycle counting sees it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Swap {
    pub removed: Vec<usize>,
    pub added: Vec<(usize, usize)>,
    pub gain: Weight,
}

impl Swap {
    /// Normalizes and checks the swap invariants against `inst`.
    pub fn new(
        inst: &TourInstance,
        removed: impl IntoIterator<Item = usize>,
        added: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, InstanceError> {
        let mut removed: Vec<usize> = removed.into_iter().collect();
        let mut added: Vec<(usize, usize)> =
            added.into_iter().map(|(u, v)| ordered(u, v)).collect();
        removed.sort_unstable();
        added.sort_unstable();
        let n = inst.n();
        for w in removed.windows(2) {
            if w[0] == w[1] {
                return Err(InstanceError::NotTourEdge(w[0]));
            }
        }
        if let Some(&i) = removed.iter().find(|&&i| i >= n) {
            return Err(InstanceError::NotTourEdge(i));
        }
        if removed.len() != added.len() {
            return Err(InstanceError::EndpointMismatch);
        }
        let mut minus: Vec<usize> = removed
            .iter()
            .flat_map(|&i| {
                let (a, b) = inst.tour_edge(i);
                [a, b]
            })
            .collect();
        let mut plus: Vec<usize> = added.iter().flat_map(|&(a, b)| [a, b]).collect();
        minus.sort_unstable();
        plus.sort_unstable();
        if minus != plus {
            return Err(InstanceError::EndpointMismatch);
        }
        let mut added_weights = Vec::with_capacity(added.len());
        for &(u, v) in &added {
            added_weights.push(inst.weight(u, v).ok_or(InstanceError::MissingEdge(u, v))?);
        }
        let out = checked_sum(removed.iter().map(|&i| inst.tour_edge_weight(i)))?;
        let inn = checked_sum(added_weights)?;
        let gain = out.checked_sub(inn).ok_or(InstanceError::Overflow)?;
        Ok(Self {
            removed,
            added,
            gain,
        })
    }

    pub fn k(&self) -> usize {
        self.removed.len()
    }

    /// Tie-break key: sorted removed indices, then sorted added pairs.
    pub fn tie_key(&self) -> (&[usize], &[(usize, usize)]) {
        (&self.removed, &self.added)
    }

    /// True if `self` should be preferred over `other`: larger gain, then smaller key.
    pub fn better_than(&self, other: &Swap) -> bool {
        self.gain > other.gain || (self.gain == other.gain && self.tie_key() < other.tie_key())
    }
}

/// A feasible swap: exchanging the edges yields one Hamiltonian cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub swap: Swap,
    /// Endpoints of the removed tour edges, in the order of `swap.removed`.
    pub removed_edges: Vec<(usize, usize)>,
    pub resulting_weight: Weight,
    /// The resulting tour, starting at the old `tour[0]`.
    pub tour: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct MoveRecord {
    gain: Weight,
    remove: Vec<[usize; 2]>,
    add: Vec<[usize; 2]>,
}

impl Move {
    pub fn gain(&self) -> Weight {
        self.swap.gain
    }

    pub fn k(&self) -> usize {
        self.swap.k()
    }

    pub fn better_than(&self, other: &Move) -> bool {
        self.swap.better_than(&other.swap)
    }

    /// One-line JSON form with endpoint pairs sorted ascending.
    pub fn to_json_line(&self) -> String {
        let mut remove: Vec<[usize; 2]> = self
            .removed_edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = ordered(u, v);
                [a, b]
            })
            .collect();
        remove.sort_unstable();
        let rec = MoveRecord {
            gain: self.swap.gain,
            remove,
            add: self.swap.added.iter().map(|&(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&rec).expect("plain record serializes")
    }
}

/// Outcome of checking a swap on an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Move(Move),
    Infeasible { cycles: usize },
}

/// Counts the cycles of `(C \ E-) ∪ E+` and, if there is exactly one, builds the move.
pub fn validate_swap(inst: &TourInstance, swap: &Swap) -> Result<Validation, InstanceError> {
    let checked = Swap::new(
        inst,
        swap.removed.iter().copied(),
        swap.added.iter().copied(),
    )?;
    let n = inst.n();
    let mut is_removed = vec![false; n];
    for &i in &checked.removed {
        is_removed[i] = true;
    }
    // Each vertex has two edge ends; edges are numbered so parallel pairs stay distinct.
    let mut ends: Vec<[(usize, usize); 2]> = vec![[(usize::MAX, usize::MAX); 2]; n];
    let mut fill = vec![0u8; n];
    let mut attach = |u: usize, v: usize, id: usize| {
        ends[u][fill[u] as usize] = (v, id);
        fill[u] += 1;
        ends[v][fill[v] as usize] = (u, id);
        fill[v] += 1;
    };
    for (i, _) in is_removed.iter().enumerate().filter(|(_, &r)| !r) {
        let (u, v) = inst.tour_edge(i);
        attach(u, v, i);
    }
    for (j, &(u, v)) in checked.added.iter().enumerate() {
        attach(u, v, n + j);
    }
    let mut seen = vec![false; n];
    let mut cycles = 0;
    let mut order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut prev_edge = usize::MAX;
        let mut v = s;
        loop {
            seen[v] = true;
            if cycles == 1 {
                order.push(v);
            }
            let [a, b] = ends[v];
            let (next, id) = if a.1 != prev_edge { a } else { b };
            prev_edge = id;
            v = next;
            if v == s {
                break;
            }
        }
    }
    if cycles != 1 {
        return Ok(Validation::Infeasible { cycles });
    }
    let tour = orient_cycle(inst, &is_removed, order);
    let old = inst.tour_weight()?;
    let resulting_weight = old
        .checked_sub(checked.gain)
        .ok_or(InstanceError::Overflow)?;
    let removed_edges = checked.removed.iter().map(|&i| inst.tour_edge(i)).collect();
    Ok(Validation::Move(Move {
        swap: checked,
        removed_edges,
        resulting_weight,
        tour,
    }))
}

/// Orients the new cycle from `tour[0]`: keep the closing edge `tour[n-1] -> tour[0]`
/// if it survives, else the edge `tour[0] -> tour[1]`, else go to the smaller neighbour.
fn orient_cycle(inst: &TourInstance, is_removed: &[bool], order: Vec<usize>) -> Vec<usize> {
    let n = inst.n();
    let start = inst.tour()[0];
    let at = order
        .iter()
        .position(|&v| v == start)
        .expect("cycle spans all vertices");
    let mut forward: Vec<usize> = order[at..].iter().chain(&order[..at]).copied().collect();
    let next = forward[1];
    let prev = forward[n - 1];
    let want_next = if !is_removed[n - 1] {
        let closing = inst.tour()[n - 1];
        if next == closing {
            prev
        } else {
            next
        }
    } else if !is_removed[0] {
        inst.tour()[1]
    } else {
        next.min(prev)
    };
    if want_next != next {
        forward[1..].reverse();
    }
    forward
}

/// Applies a validated move, failing if its removed edges left the tour.
pub fn apply_move(inst: &TourInstance, m: &Move) -> Result<TourInstance, InstanceError> {
    for (&index, &(u, v)) in m.swap.removed.iter().zip(&m.removed_edges) {
        if index >= inst.n() || inst.tour_edge(index) != (u, v) {
            return Err(InstanceError::StaleMove { index, u, v });
        }
    }
    inst.with_tour(m.tour.clone())
}

/// Validates and unwraps, turning infeasibility into an error.
pub fn require_move(inst: &TourInstance, swap: &Swap) -> Result<Move, InstanceError> {
    match validate_swap(inst, swap)? {
        Validation::Move(m) => Ok(m),
        Validation::Infeasible { cycles } => Err(InstanceError::NotAMove { cycles }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn weighted_k4() -> TourInstance {
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
    fn parses_square() {
        let inst = parse_instance("4 4 2\n0 1 2 3\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n").unwrap();
        assert_eq!(inst.n(), 4);
        assert_eq!(inst.max_degree(), 2);
        assert_eq!(inst.tour_weight().unwrap(), 4);
    }

    #[test]
    fn parses_k4_with_comments() {
        let text = "# K4\n4 6 3\n0 1 2 3\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n# diagonals\n0 2 1\n1 3 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.max_degree(), 3);
    }

    #[test]
    fn repeated_tour_vertex_is_rejected() {
        let err = parse_instance("4 4 2\n0 1 0 3\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n").unwrap_err();
        assert!(matches!(err, InstanceError::NotHamiltonian(_)), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_instance("4 4 2\n0 1 2 3\n0 1 1\n1 x 1\n").unwrap_err();
        assert_eq!(
            err,
            InstanceError::Syntax {
                line: 4,
                column: 3,
                message: "invalid number `x`".into()
            }
        );
    }

    #[test]
    fn conflicting_duplicate_and_degree_errors() {
        let err = parse_instance("3 4 2\n0 1 2\n0 1 1\n1 2 1\n2 0 1\n1 0 2\n").unwrap_err();
        assert!(matches!(err, InstanceError::ConflictingWeight { .. }));
        let err = parse_instance("4 6 2\n0 1 2 3\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n0 2 1\n1 3 1\n")
            .unwrap_err();
        assert!(matches!(err, InstanceError::DegreeExceeded { .. }));
    }

    #[test]
    fn k4_tour_weight() {
        assert_eq!(weighted_k4().tour_weight().unwrap(), 12);
    }

    #[test]
    fn identity_swap_is_a_zero_gain_move() {
        let inst = weighted_k4();
        let s = Swap::new(&inst, [0, 2], [(0, 1), (2, 3)]).unwrap();
        let Validation::Move(m) = validate_swap(&inst, &s).unwrap() else {
            panic!("identity must be feasible")
        };
        assert_eq!(m.gain(), 0);
        assert_eq!(m.tour, vec![0, 1, 2, 3]);
    }

    #[test]
    fn k4_two_opt() {
        let inst = weighted_k4();
        let s = Swap::new(&inst, [0, 2], [(0, 2), (1, 3)]).unwrap();
        let m = require_move(&inst, &s).unwrap();
        assert_eq!(m.gain(), 8);
        assert_eq!(m.resulting_weight, 4);
        let next = apply_move(&inst, &m).unwrap();
        assert_eq!(next.tour(), &[0, 2, 1, 3]);
        assert_eq!(next.tour_weight().unwrap(), 4);
        assert_eq!(
            m.to_json_line(),
            r#"{"gain":8,"remove":[[0,1],[2,3]],"add":[[0,2],[1,3]]}"#
        );
        assert!(matches!(
            apply_move(&next, &m),
            Err(InstanceError::StaleMove { .. })
        ));
    }

    #[test]
    fn parallel_reconnection_gives_two_cycles() {
        let inst = weighted_k4();
        let s = Swap::new(&inst, [0, 2], [(0, 3), (1, 2)]).unwrap();
        assert_eq!(
            validate_swap(&inst, &s).unwrap(),
            Validation::Infeasible { cycles: 2 }
        );
    }

    #[test]
    fn swap_construction_errors() {
        let inst = weighted_k4();
        assert!(matches!(
            Swap::new(&inst, [0], [(0, 2)]),
            Err(InstanceError::EndpointMismatch)
        ));
        assert!(matches!(
            Swap::new(&inst, [7], [(0, 1)]),
            Err(InstanceError::NotTourEdge(7))
        ));
        let square = TourInstance::new(
            4,
            [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)],
            vec![0, 1, 2, 3],
        )
        .unwrap();
        assert!(matches!(
            Swap::new(&square, [0, 2], [(0, 2), (1, 3)]),
            Err(InstanceError::MissingEdge(0, 2))
        ));
    }

    #[test]
    fn canonical_text_round_trip() {
        let inst = weighted_k4();
        let text = inst.to_text();
        let again = parse_instance(&text).unwrap();
        assert_eq!(again, inst);
        assert_eq!(again.to_text(), text);
    }

    #[test]
    fn overflow_is_reported() {
        let inst = TourInstance::new(
            3,
            [(0, 1, i64::MAX), (1, 2, i64::MAX), (2, 0, 1)],
            vec![0, 1, 2],
        )
        .unwrap();
        assert_eq!(inst.tour_weight(), Err(InstanceError::Overflow));
    }
}
