//! Reduction from triangle detection in a tripartite graph to finding an
//! improving move of at most nine edges in a subcubic graph.
//!
//! The tour runs through one extended scope per input vertex: all of part
//! A, then B, then C, with one subdivision vertex in front of each scope.
//! Left and right follow the tour direction everywhere. Arcs are oriented
//! A→B, B→C, C→A; for an arc `(x, y)` the catalogue swap `S(x, y)` removes
//! two tour edges around a nested chord in the scope of `x` and one edge
//! inside the central part of the scope of `y`.

use serde::Serialize;

use crate::instance::{validate_swap, Move, Swap, TourInstance, Validation, Weight};

use super::HardnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Part {
    A,
    B,
    C,
}

impl Part {
    /// Head part of arcs leaving this part.
    pub fn next(self) -> Part {
        match self {
            Part::A => Part::B,
            Part::B => Part::C,
            Part::C => Part::A,
        }
    }

    /// Tail part of arcs entering this part.
    pub fn prev(self) -> Part {
        self.next().next()
    }
}

/// A graph whose vertices are split into three independent sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripartiteGraph {
    part: Vec<Part>,
    edges: Vec<(usize, usize)>,
}

impl TripartiteGraph {
    pub fn new(part: Vec<Part>, edges: Vec<(usize, usize)>) -> Result<Self, HardnessError> {
        let n = part.len();
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(HardnessError::VertexOutOfRange(u.max(v)));
            }
            if part[u] == part[v] {
                return Err(HardnessError::NotIndependent(u, v));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(HardnessError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(Self { part, edges })
    }

    pub fn n(&self) -> usize {
        self.part.len()
    }

    pub fn part(&self, v: usize) -> Part {
        self.part[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours of `v` in part `p`, ascending.
    fn neighbours_in(&self, v: usize, p: Part) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .filter(|&w| self.part[w] == p)
            .collect();
        out.sort_unstable();
        out
    }

    /// The edge between `u` and `v` oriented along the arc direction.
    fn arc(&self, u: usize, v: usize) -> (usize, usize) {
        if self.part[u].next() == self.part[v] {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// Weights of the removed edge next to the left end of each nested chord.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleMode {
    /// Weight 2 for arcs A→B and 1 otherwise: every A→B swap gains 1 and
    /// every other catalogue swap is neutral.
    Unit,
    /// Integer edge weights `w'` in input edge order: the edge gets weight
    /// `1 - w'(xy)`, so a catalogue swap gains `-w'(xy)` and a move exists
    /// exactly when some triangle has negative total weight.
    Signed(Vec<Weight>),
}

/// One catalogue swap `S(x, y)` for the arc `x → y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogueSwap {
    pub from: usize,
    pub to: usize,
    pub swap: Swap,
}

#[derive(Debug, Clone)]
pub struct TriangleReduction {
    pub instance: TourInstance,
    pub catalogue: Vec<CatalogueSwap>,
    /// Vertex names: `sub:<v>` for the subdivision vertex in front of the
    /// scope of input vertex `v`, `scope:<v>:<i>` for its `i`-th scope vertex
    /// (1-based).
    pub names: Vec<String>,
}

#[derive(Serialize)]
struct CatalogueRecord {
    from: usize,
    to: usize,
    gain: Weight,
    remove: Vec<[usize; 2]>,
    add: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct TriangleManifest<'a> {
    kind: &'static str,
    vertices: usize,
    names: &'a [String],
    catalogue: Vec<CatalogueRecord>,
}

impl TriangleReduction {
    /// JSON sidecar with the vertex names and the catalogue.
    pub fn manifest_json(&self) -> String {
        let catalogue = self
            .catalogue
            .iter()
            .map(|c| CatalogueRecord {
                from: c.from,
                to: c.to,
                gain: c.swap.gain,
                remove: c
                    .swap
                    .removed
                    .iter()
                    .map(|&e| {
                        let (a, b) = self.instance.tour_edge(e);
                        [a.min(b), a.max(b)]
                    })
                    .collect(),
                add: c.swap.added.iter().map(|&(a, b)| [a, b]).collect(),
            })
            .collect();
        serde_json::to_string_pretty(&TriangleManifest {
            kind: "triangle",
            vertices: self.instance.n(),
            names: &self.names,
            catalogue,
        })
        .expect("manifest serializes")
    }
}

/// Scope geometry of one input vertex.
struct Scope {
    /// Global id of scope vertex `i` (1-based) is `first + i - 1`.
    first: usize,
    len: usize,
    /// Neighbours owning the nested chords, outermost first.
    chord_to: Vec<usize>,
    /// Neighbours owning the central edges, in order.
    central_to: Vec<usize>,
    /// Scope index of the left endpoint of the first central edge.
    central_first: usize,
}

impl Scope {
    fn at(&self, i: usize) -> usize {
        debug_assert!((1..=self.len).contains(&i));
        self.first + i - 1
    }

    /// Left and right endpoints of the `t`-th nested chord (0 = outermost).
    fn chord(&self, t: usize) -> (usize, usize) {
        (self.at(2 + 3 * t), self.at(self.len - 1 - 3 * t))
    }

    /// Left and right endpoints of the `s`-th central edge (0-based).
    /// Consecutive central edges are three apart.
    fn central(&self, s: usize) -> (usize, usize) {
        let i = self.central_first + 3 * s;
        (self.at(i), self.at(i + 1))
    }
}

/// Builds the reduction instance and its catalogue of 3-swaps.
///
/// Scope sizes are `6 d_next + 3 d_prev - 1`, where `d_next` and `d_prev`
/// count neighbours in the next and previous part. A vertex without
/// neighbours in the next part has no nested chords, so its central edges
/// start right after its subdivision vertex; an isolated vertex has an
/// empty scope.
pub fn gen_triangle_instance(
    t: &TripartiteGraph,
    mode: &TriangleMode,
) -> Result<TriangleReduction, HardnessError> {
    if t.edges.is_empty() {
        return Err(HardnessError::EmptyEdgeSet);
    }
    if let TriangleMode::Signed(w) = mode {
        if w.len() != t.edges.len() {
            return Err(HardnessError::WeightCount {
                expected: t.edges.len(),
                found: w.len(),
            });
        }
    }
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by_key(|&v| (t.part[v], v));

    let mut names = Vec::new();
    let mut scopes: Vec<Option<Scope>> = (0..t.n()).map(|_| None).collect();
    for &v in &order {
        let p = t.part[v];
        let chord_to = t.neighbours_in(v, p.next());
        let central_to = t.neighbours_in(v, p.prev());
        let (dy, dz) = (chord_to.len(), central_to.len());
        let (len, central_first) = match (dy, dz) {
            (0, 0) => (0, 1),
            (0, _) => (3 * dz - 1, 1),
            _ => (6 * dy + 3 * dz - 1, 3 * dy + 1),
        };
        names.push(format!("sub:{v}"));
        let first = names.len();
        names.extend((1..=len).map(|i| format!("scope:{v}:{i}")));
        scopes[v] = Some(Scope {
            first,
            len,
            chord_to,
            central_to,
            central_first,
        });
    }
    let scopes: Vec<Scope> = scopes
        .into_iter()
        .map(|s| s.expect("every vertex placed"))
        .collect();
    let n = names.len();
    let tour: Vec<usize> = (0..n).collect();

    // Weight of the removed edge at the left end of each chord.
    let signed = |u: usize, v: usize| -> Weight {
        match mode {
            TriangleMode::Unit => {
                let (x, y) = t.arc(u, v);
                if t.part[x] == Part::A && t.part[y] == Part::B {
                    2
                } else {
                    1
                }
            }
            TriangleMode::Signed(w) => {
                let i = t
                    .edges
                    .iter()
                    .position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
                    .expect("arc comes from an input edge");
                1 - w[i]
            }
        }
    };

    let mut tour_weight = vec![1 as Weight; n];
    let mut chords: Vec<(usize, usize, Weight)> = Vec::new();
    let mut catalogue_parts = Vec::new();
    for &x in &order {
        let sx = &scopes[x];
        for (ti, &y) in sx.chord_to.iter().enumerate() {
            let sy = &scopes[y];
            let s = sy
                .central_to
                .iter()
                .position(|&w| w == x)
                .expect("arc tail is a central neighbour of its head");
            let (cl, cr) = sx.chord(ti);
            let (l_out, r_out) = (cl - 1, cr + 1);
            let (jl, jr) = sy.central(s);
            // Tour edge `i` joins tour[i] and tour[i + 1]; ids equal positions.
            tour_weight[l_out] = signed(x, y);
            chords.push((cl, cr, 1));
            chords.push((l_out, jr, 1));
            chords.push((r_out, jl, 1));
            catalogue_parts.push((x, y, [l_out, cr, jl], [(cl, cr), (l_out, jr), (r_out, jl)]));
        }
    }
    let mut edges: Vec<(usize, usize, Weight)> =
        (0..n).map(|i| (i, (i + 1) % n, tour_weight[i])).collect();
    edges.extend(chords);
    let instance = TourInstance::new(n, edges, tour)?;
    let catalogue = catalogue_parts
        .into_iter()
        .map(|(from, to, removed, added)| {
            Ok(CatalogueSwap {
                from,
                to,
                swap: Swap::new(&instance, removed, added)?,
            })
        })
        .collect::<Result<Vec<_>, HardnessError>>()?;
    Ok(TriangleReduction {
        instance,
        catalogue,
        names,
    })
}

/// Best improving move made of one, two or three catalogue swaps.
///
/// Catalogue swaps touch pairwise disjoint vertex sets, so every
/// combination is a swap; each is validated for a single resulting cycle.
pub fn restricted_oracle_9opt(
    inst: &TourInstance,
    catalogue: &[CatalogueSwap],
) -> Result<Option<Move>, HardnessError> {
    for c in catalogue {
        let again = Swap::new(
            inst,
            c.swap.removed.iter().copied(),
            c.swap.added.iter().copied(),
        )
        .map_err(|e| HardnessError::ForeignInstance(e.to_string()))?;
        if again != c.swap {
            return Err(HardnessError::ForeignInstance(format!(
                "swap {}->{} has gain {} here, {} in the catalogue",
                c.from, c.to, again.gain, c.swap.gain
            )));
        }
    }
    let m = catalogue.len();
    let mut best: Option<Move> = None;
    let mut consider = |picked: &[usize]| -> Result<(), HardnessError> {
        let removed = picked
            .iter()
            .flat_map(|&i| catalogue[i].swap.removed.iter().copied());
        let added = picked
            .iter()
            .flat_map(|&i| catalogue[i].swap.added.iter().copied());
        let swap = Swap::new(inst, removed, added)?;
        if swap.gain <= 0 || best.as_ref().is_some_and(|b| !swap.better_than(&b.swap)) {
            return Ok(());
        }
        if let Validation::Move(mv) = validate_swap(inst, &swap)? {
            best = Some(mv);
        }
        Ok(())
    };
    for a in 0..m {
        consider(&[a])?;
        for b in a + 1..m {
            consider(&[a, b])?;
            for c in b + 1..m {
                consider(&[a, b, c])?;
            }
        }
    }
    Ok(best)
}
