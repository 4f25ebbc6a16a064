//! Reduction from partitioned subgraph isomorphism to improving a tour in a
//! graph of maximum degree three with weights in {1, 2}.
//!
//! Three gadget kinds are wired together:
//! - a forcing gadget is a path `x z y`, so a Hamiltonian cycle passes
//!   through it once;
//! - a choice gadget of size `l` is a cycle `x0 y0 z0 ... xl yl zl`; edges
//!   entering an `x` terminal from outside weigh 2, so a cheap cycle enters
//!   at some `xi`, walks around, and leaves at `yi`;
//! - a domino is an 8-vertex gadget that a Hamiltonian cycle crosses either
//!   from `x1` to `y1` or from `x2` to `y2`, nothing else.
//!
//! Host vertices are ordered by index; every rank below is 1-based within
//! the stated ordered set. Arcs are ordered lexicographically, undirected
//! host edges by their sorted endpoint pair.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::instance::{TourInstance, Weight};

use super::HardnessError;

/// A partitioned subgraph-isomorphism instance: host graph, pattern graph
/// and the class of every host vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternedHost {
    pub host_n: usize,
    pub host_edges: Vec<(usize, usize)>,
    pub pattern_n: usize,
    pub pattern_edges: Vec<(usize, usize)>,
    pub class: Vec<usize>,
}

impl PatternedHost {
    fn pattern_neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.pattern_n];
        for &(i, j) in &self.pattern_edges {
            nb[i].push(j);
            nb[j].push(i);
        }
        for l in &mut nb {
            l.sort_unstable();
            l.dedup();
        }
        nb
    }

    fn host_neighbours(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.host_n];
        for &(u, v) in &self.host_edges {
            nb[u].push(v);
            nb[v].push(u);
        }
        for l in &mut nb {
            l.sort_unstable();
        }
        nb
    }

    fn pattern_has(&self, i: usize, j: usize) -> bool {
        self.pattern_edges
            .iter()
            .any(|&(a, b)| (a, b) == (i, j) || (a, b) == (j, i))
    }

    /// Checks the assumptions the construction relies on: no isolated
    /// pattern vertex, no empty class, every host edge maps to a pattern
    /// edge, and every host vertex has a neighbour in each class adjacent
    /// to its own.
    pub fn validate(&self) -> Result<(), HardnessError> {
        if self.class.len() != self.host_n {
            return Err(HardnessError::VertexOutOfRange(self.class.len()));
        }
        for &(i, j) in &self.pattern_edges {
            if i >= self.pattern_n || j >= self.pattern_n || i == j {
                return Err(HardnessError::VertexOutOfRange(i.max(j)));
            }
        }
        let pnb = self.pattern_neighbours();
        if let Some(i) = (0..self.pattern_n).find(|&i| pnb[i].is_empty()) {
            return Err(HardnessError::IsolatedPatternVertex(i));
        }
        if let Some(&c) = self.class.iter().find(|&&c| c >= self.pattern_n) {
            return Err(HardnessError::VertexOutOfRange(c));
        }
        if let Some(i) = (0..self.pattern_n).find(|&i| !self.class.contains(&i)) {
            return Err(HardnessError::EmptyClass(i));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &self.host_edges {
            if u >= self.host_n || v >= self.host_n {
                return Err(HardnessError::VertexOutOfRange(u.max(v)));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(HardnessError::DuplicateEdge(u.min(v), u.max(v)));
            }
            if !self.pattern_has(self.class[u], self.class[v]) {
                return Err(HardnessError::EdgeOutsidePattern(u, v));
            }
        }
        let hnb = self.host_neighbours();
        for u in 0..self.host_n {
            for &j in &pnb[self.class[u]] {
                if !hnb[u].iter().any(|&v| self.class[v] == j) {
                    return Err(HardnessError::MissingClassNeighbour {
                        vertex: u,
                        class: j,
                    });
                }
            }
        }
        Ok(())
    }

    /// Drops host edges that do not map to pattern edges, then repeatedly
    /// drops host vertices lacking a neighbour in some adjacent class.
    /// Neither step changes whether the pattern occurs. Returns the pruned
    /// instance and, for each kept vertex, its original index.
    pub fn pruned(&self) -> (PatternedHost, Vec<usize>) {
        let pnb = self.pattern_neighbours();
        let mut alive = vec![true; self.host_n];
        let edges: Vec<(usize, usize)> = self
            .host_edges
            .iter()
            .copied()
            .filter(|&(u, v)| self.pattern_has(self.class[u], self.class[v]))
            .collect();
        loop {
            let mut changed = false;
            for u in 0..self.host_n {
                if !alive[u] {
                    continue;
                }
                let ok = pnb[self.class[u]].iter().all(|&j| {
                    edges.iter().any(|&(a, b)| {
                        (a == u && alive[b] && self.class[b] == j)
                            || (b == u && alive[a] && self.class[a] == j)
                    })
                });
                if !ok {
                    alive[u] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..self.host_n).filter(|&u| alive[u]).collect();
        let mut index = vec![usize::MAX; self.host_n];
        for (i, &u) in kept.iter().enumerate() {
            index[u] = i;
        }
        let host_edges = edges
            .into_iter()
            .filter(|&(u, v)| alive[u] && alive[v])
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        let pruned = PatternedHost {
            host_n: kept.len(),
            host_edges,
            pattern_n: self.pattern_n,
            pattern_edges: self.pattern_edges.clone(),
            class: kept.iter().map(|&u| self.class[u]).collect(),
        };
        (pruned, kept)
    }
}

#[derive(Debug, Clone, Copy)]
struct Forcing {
    x: usize,
    z: usize,
    y: usize,
}

#[derive(Debug, Clone)]
struct Choice {
    x: Vec<usize>,
    y: Vec<usize>,
    z: Vec<usize>,
}

impl Choice {
    /// Walk from `x[i]` around the cycle backwards to `y[i]`.
    fn traverse(&self, i: usize, out: &mut Vec<usize>) {
        let m = self.x.len();
        out.push(self.x[i]);
        for step in 1..m {
            let t = (i + m - step) % m;
            out.extend([self.z[t], self.y[t], self.x[t]]);
        }
        out.extend([self.z[i], self.y[i]]);
    }
}

#[derive(Debug, Clone, Copy)]
struct Domino {
    x1: usize,
    y1: usize,
    x2: usize,
    y2: usize,
    a: usize,
    b: usize,
    c: usize,
    d: usize,
}

impl Domino {
    fn traverse(&self, first: bool, out: &mut Vec<usize>) {
        if first {
            out.extend([
                self.x1, self.c, self.x2, self.a, self.d, self.y2, self.b, self.y1,
            ]);
        } else {
            out.extend([
                self.x2, self.c, self.x1, self.d, self.a, self.y1, self.b, self.y2,
            ]);
        }
    }
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    edges: Vec<(usize, usize, Weight)>,
}

impl Builder {
    fn vertex(&mut self, name: String) -> usize {
        self.names.push(name);
        self.names.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize, w: Weight) {
        self.edges.push((u, v, w));
    }

    fn forcing(&mut self, id: &str) -> Forcing {
        let [x, z, y] = ["x", "z", "y"].map(|r| self.vertex(format!("{id}:{r}")));
        self.edge(x, z, 1);
        self.edge(z, y, 1);
        Forcing { x, z, y }
    }

    fn choice(&mut self, id: &str, size: usize) -> Choice {
        let mut c = Choice {
            x: Vec::new(),
            y: Vec::new(),
            z: Vec::new(),
        };
        for i in 0..=size {
            c.x.push(self.vertex(format!("{id}:x:{i}")));
            c.y.push(self.vertex(format!("{id}:y:{i}")));
            c.z.push(self.vertex(format!("{id}:z:{i}")));
        }
        for i in 0..=size {
            self.edge(c.x[i], c.y[i], 1);
            self.edge(c.y[i], c.z[i], 1);
            self.edge(c.z[i], c.x[(i + 1) % (size + 1)], 1);
        }
        c
    }

    fn domino(&mut self, id: &str) -> Domino {
        let [x1, y1, x2, y2, a, b, c, d] =
            ["x1", "y1", "x2", "y2", "a", "b", "c", "d"].map(|r| self.vertex(format!("{id}:{r}")));
        for (u, v) in [
            (x1, c),
            (x1, d),
            (y1, a),
            (y1, b),
            (x2, a),
            (x2, c),
            (y2, b),
            (y2, d),
            (a, d),
        ] {
            self.edge(u, v, 1);
        }
        Domino {
            x1,
            y1,
            x2,
            y2,
            a,
            b,
            c,
            d,
        }
    }
}

/// Vertex ids of every gadget, kept so both tours can be traced.
struct Layout {
    pnb: Vec<Vec<usize>>,
    /// Rank of each host vertex within its class (1-based).
    rank: Vec<usize>,
    fv: Vec<Forcing>,
    class_choice: Vec<Choice>,
    /// Per host vertex `u` and pattern neighbour `j` of its class.
    edge_choice: BTreeMap<(usize, usize), Choice>,
    arcs: Vec<(usize, usize)>,
    /// Rank of the arc head among the tail's neighbours in the head's class.
    arc_rank: Vec<usize>,
    fa: Vec<Forcing>,
    arc_domino: Vec<Domino>,
    undirected: Vec<(usize, usize)>,
    fe: Vec<Forcing>,
    final_domino: Domino,
}

impl Layout {
    fn arc_index(&self, u: usize, v: usize) -> usize {
        self.arcs.binary_search(&(u, v)).expect("arc exists")
    }
}

/// Generated instance with the starting tour `C*` as its tour.
#[derive(Debug, Clone)]
pub struct SubisoReduction {
    pub instance: TourInstance,
    /// Hierarchical names `gadget:role:index`, one per vertex.
    pub names: Vec<String>,
    /// Weight of the starting tour.
    pub beta: Weight,
    /// Number of choice gadgets.
    pub choice_gadgets: usize,
    /// Move size that suffices to reach a cheaper tour: `16 k + 4` for a
    /// pattern with `k` edges.
    pub k_prime: usize,
    /// The weight-2 edge closing the starting tour.
    pub special_edge: (usize, usize),
}

#[derive(Serialize)]
struct SubisoManifest<'a> {
    kind: &'static str,
    vertices: usize,
    beta: Weight,
    choice_gadgets: usize,
    k_prime: usize,
    special_edge: [usize; 2],
    names: &'a [String],
}

impl SubisoReduction {
    pub fn manifest_json(&self) -> String {
        serde_json::to_string_pretty(&SubisoManifest {
            kind: "subiso",
            vertices: self.instance.n(),
            beta: self.beta,
            choice_gadgets: self.choice_gadgets,
            k_prime: self.k_prime,
            special_edge: [self.special_edge.0, self.special_edge.1],
            names: &self.names,
        })
        .expect("manifest serializes")
    }
}

fn build(ph: &PatternedHost) -> Result<(Builder, Layout), HardnessError> {
    ph.validate()?;
    let pnb = ph.pattern_neighbours();
    let hnb = ph.host_neighbours();
    let n = ph.host_n;
    let mut rank = vec![0; n];
    let mut class_size = vec![0; ph.pattern_n];
    for u in 0..n {
        class_size[ph.class[u]] += 1;
        rank[u] = class_size[ph.class[u]];
    }
    let in_class = |u: usize, j: usize| -> Vec<usize> {
        hnb[u]
            .iter()
            .copied()
            .filter(|&v| ph.class[v] == j)
            .collect()
    };
    let mut b = Builder::default();

    // Choice gadget per pattern vertex, chained through the 0-terminals.
    let class_choice: Vec<Choice> = (0..ph.pattern_n)
        .map(|i| b.choice(&format!("C{i}"), class_size[i]))
        .collect();
    for i in 0..ph.pattern_n.saturating_sub(1) {
        b.edge(class_choice[i].y[0], class_choice[i + 1].x[0], 2);
    }

    // Forcing gadget per host vertex with its edge choice gadgets.
    let mut fv = vec![b.forcing("Fv0")];
    let mut edge_choice = BTreeMap::new();
    for u in 0..n {
        let (i, p) = (ph.class[u], rank[u]);
        let f = b.forcing(&format!("Fv{}", u + 1));
        let prev = fv[u];
        let mut chain = Vec::new();
        for &j in &pnb[i] {
            let c = b.choice(&format!("C{i}.{p}.{j}"), in_class(u, j).len());
            chain.push(c.clone());
            edge_choice.insert((u, j), c);
        }
        b.edge(prev.y, class_choice[i].x[p], 2);
        b.edge(class_choice[i].y[p], f.x, 1);
        b.edge(prev.y, chain[0].x[0], 2);
        for w in chain.windows(2) {
            b.edge(w[0].y[0], w[1].x[0], 2);
        }
        b.edge(chain[chain.len() - 1].y[0], f.x, 1);
        fv.push(f);
    }

    // Domino and forcing gadget per arc.
    let mut arcs: Vec<(usize, usize)> = ph
        .host_edges
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    arcs.sort_unstable();
    let mut fa = vec![b.forcing("Fa0")];
    let mut arc_domino = Vec::new();
    let mut arc_rank = Vec::new();
    for (l, &(u, v)) in arcs.iter().enumerate() {
        let (i, p, j, q) = (ph.class[u], rank[u], ph.class[v], rank[v]);
        let d = b.domino(&format!("D{i}.{p}.{j}.{q}"));
        let f = b.forcing(&format!("Fa{}", l + 1));
        let prev = fa[l];
        b.edge(prev.y, d.x1, 1);
        b.edge(d.y1, f.x, 1);
        let r = in_class(u, j)
            .iter()
            .position(|&w| w == v)
            .expect("head is a neighbour")
            + 1;
        let c = &edge_choice[&(u, j)];
        b.edge(prev.y, c.x[r], 2);
        b.edge(c.y[r], f.x, 1);
        arc_domino.push(d);
        arc_rank.push(r);
        fa.push(f);
    }

    // Forcing gadget per undirected edge, oriented from the lower class.
    let mut undirected: Vec<(usize, usize)> = ph
        .host_edges
        .iter()
        .map(|&(u, v)| {
            if ph.class[u] < ph.class[v] {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    undirected.sort_unstable_by_key(|&(u, v)| (u.min(v), u.max(v)));
    let mut fe = vec![b.forcing("Fe0")];
    let layout_arcs = arcs.clone();
    let arc_index = |u: usize, v: usize| layout_arcs.binary_search(&(u, v)).expect("arc exists");
    for (l, &(u, v)) in undirected.iter().enumerate() {
        let f = b.forcing(&format!("Fe{}", l + 1));
        let prev = fe[l];
        let (d_up, d_down) = (arc_domino[arc_index(u, v)], arc_domino[arc_index(v, u)]);
        b.edge(prev.y, f.x, 1);
        b.edge(prev.y, d_up.x2, 1);
        b.edge(d_up.y2, d_down.x2, 1);
        b.edge(d_down.y2, f.x, 1);
        fe.push(f);
    }

    // Closing domino and the special edge.
    let final_domino = b.domino("Dstar");
    let (fv0, fvn, fa0, fam, fe0, fem) = (
        fv[0],
        fv[n],
        fa[0],
        fa[arcs.len()],
        fe[0],
        fe[undirected.len()],
    );
    b.edge(fvn.y, fa0.x, 1);
    b.edge(fam.y, fe0.x, 1);
    b.edge(fem.y, final_domino.x1, 1);
    b.edge(final_domino.y1, fv0.x, 1);
    b.edge(fem.y, class_choice[0].x[0], 2);
    b.edge(class_choice[ph.pattern_n - 1].y[0], final_domino.x2, 1);
    b.edge(final_domino.y2, fv0.x, 2);

    let layout = Layout {
        pnb,
        rank,
        fv,
        class_choice,
        edge_choice,
        arcs,
        arc_rank,
        fa,
        arc_domino,
        undirected,
        fe,
        final_domino,
    };
    Ok((b, layout))
}

/// Traces `C*` (no `phi`) or the cheaper tour for the embedding `phi`.
fn trace(ph: &PatternedHost, lay: &Layout, phi: Option<&[usize]>) -> Vec<usize> {
    let used = |u: usize| phi.is_some_and(|f| f[ph.class[u]] == u);
    let mut t = Vec::new();
    let force = |f: &Forcing, t: &mut Vec<usize>| t.extend([f.x, f.z, f.y]);
    force(&lay.fv[0], &mut t);
    for u in 0..ph.host_n {
        let i = ph.class[u];
        if used(u) {
            lay.class_choice[i].traverse(lay.rank[u], &mut t);
        } else {
            for &j in &lay.pnb[i] {
                lay.edge_choice[&(u, j)].traverse(0, &mut t);
            }
        }
        force(&lay.fv[u + 1], &mut t);
    }
    force(&lay.fa[0], &mut t);
    for (l, &(u, v)) in lay.arcs.iter().enumerate() {
        if used(u) && used(v) {
            lay.edge_choice[&(u, ph.class[v])].traverse(lay.arc_rank[l], &mut t);
        } else {
            lay.arc_domino[l].traverse(true, &mut t);
        }
        force(&lay.fa[l + 1], &mut t);
    }
    force(&lay.fe[0], &mut t);
    for (l, &(u, v)) in lay.undirected.iter().enumerate() {
        if used(u) && used(v) {
            lay.arc_domino[lay.arc_index(u, v)].traverse(false, &mut t);
            lay.arc_domino[lay.arc_index(v, u)].traverse(false, &mut t);
        }
        force(&lay.fe[l + 1], &mut t);
    }
    if phi.is_some() {
        lay.final_domino.traverse(true, &mut t);
    } else {
        for c in &lay.class_choice {
            c.traverse(0, &mut t);
        }
        lay.final_domino.traverse(false, &mut t);
    }
    t
}

/// Builds the reduction graph with the starting tour `C*`.
pub fn gen_subiso_instance(ph: &PatternedHost) -> Result<SubisoReduction, HardnessError> {
    let (b, lay) = build(ph)?;
    let tour = trace(ph, &lay, None);
    let n = b.names.len();
    let instance = TourInstance::new(n, b.edges, tour)?;
    let choice_gadgets = lay.class_choice.len() + lay.edge_choice.len();
    let special_edge = (lay.final_domino.y2, lay.fv[0].x);
    Ok(SubisoReduction {
        beta: instance.tour_weight()?,
        instance,
        names: b.names,
        choice_gadgets,
        k_prime: 16 * ph.pattern_edges.len() + 4,
        special_edge,
    })
}

/// The cheaper tour induced by a partition-respecting embedding `phi`
/// (pattern vertex to host vertex), as a vertex sequence of the graph
/// built by [`gen_subiso_instance`].
pub fn subiso_witness_tour(ph: &PatternedHost, phi: &[usize]) -> Result<Vec<usize>, HardnessError> {
    let (_, lay) = build(ph)?;
    let respects = phi.len() == ph.pattern_n
        && phi
            .iter()
            .enumerate()
            .all(|(i, &u)| u < ph.host_n && ph.class[u] == i)
        && ph.pattern_edges.iter().all(|&(i, j)| {
            let (u, v) = (phi[i], phi[j]);
            ph.host_edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
        });
    if !respects {
        return Err(HardnessError::NotAnEmbedding);
    }
    Ok(trace(ph, &lay, Some(phi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The triangle pattern on a host with one partition-respecting triangle
    /// (0, 2, 4) and a dangling extra vertex per class.
    fn triangle_host() -> PatternedHost {
        PatternedHost {
            host_n: 6,
            host_edges: vec![
                (0, 2),
                (2, 4),
                (4, 0),
                (1, 2),
                (3, 4),
                (5, 0),
                (1, 3),
                (3, 5),
                (5, 1),
            ],
            pattern_n: 3,
            pattern_edges: vec![(0, 1), (1, 2), (2, 0)],
            class: vec![0, 0, 1, 1, 2, 2],
        }
    }

    #[test]
    fn starting_tour_weight_and_size_parameters() {
        let ph = triangle_host();
        let r = gen_subiso_instance(&ph).unwrap();
        assert_eq!(r.k_prime, 52);
        // Three class gadgets plus one per (host vertex, adjacent class).
        assert_eq!(r.choice_gadgets, 3 + 6 * 2);
        assert_eq!(r.beta, (r.instance.n() + 1 + r.choice_gadgets) as Weight);
        assert!(r.instance.max_degree() <= 3);
        assert!(r.instance.edges().iter().all(|&(_, _, w)| w == 1 || w == 2));
        assert_eq!(
            r.instance.weight(r.special_edge.0, r.special_edge.1),
            Some(2)
        );
    }

    #[test]
    fn embedding_gives_cheaper_tour_within_move_size() {
        let ph = triangle_host();
        let r = gen_subiso_instance(&ph).unwrap();
        let tour = subiso_witness_tour(&ph, &[0, 2, 4]).unwrap();
        let better = r.instance.with_tour(tour).unwrap();
        assert_eq!(better.tour_weight().unwrap(), r.beta - 1);
        let kept: HashSet<(usize, usize)> = (0..better.n())
            .map(|i| {
                let (a, b) = better.tour_edge(i);
                (a.min(b), a.max(b))
            })
            .collect();
        let changed = (0..r.instance.n())
            .filter(|&i| {
                let (a, b) = r.instance.tour_edge(i);
                !kept.contains(&(a.min(b), a.max(b)))
            })
            .count();
        assert!(changed <= r.k_prime, "{changed} edges differ");
        assert_eq!(
            subiso_witness_tour(&ph, &[0, 3, 4]).unwrap_err(),
            HardnessError::NotAnEmbedding
        );
    }

    #[test]
    fn validation_and_pruning() {
        let mut ph = triangle_host();
        ph.host_edges.push((0, 1));
        assert_eq!(
            ph.validate().unwrap_err(),
            HardnessError::EdgeOutsidePattern(0, 1)
        );
        let (pruned, kept) = ph.pruned();
        assert_eq!(kept, (0..6).collect::<Vec<_>>());
        pruned.validate().unwrap();
        // Vertex 1 loses its class-2 neighbour and is pruned; then 3 loses
        // its class-0 neighbour, then 5.
        ph.host_edges.retain(|&e| e != (5, 1) && e != (0, 1));
        let (pruned, kept) = ph.pruned();
        assert_eq!(kept, vec![0, 2, 4]);
        assert_eq!(pruned.host_edges.len(), 3);
        let isolated = PatternedHost {
            pattern_n: 4,
            ..triangle_host()
        };
        assert_eq!(
            isolated.validate().unwrap_err(),
            HardnessError::IsolatedPatternVertex(3)
        );
    }

    /// Extends `path` to cover every vertex in `free`, in up to `pieces`
    /// paths whose endpoints are terminals; records each cover's endpoint pairs.
    fn covers(
        adj: &[Vec<usize>],
        terminal: &[bool],
        free: &mut Vec<bool>,
        path: &mut Vec<usize>,
        ends: &mut Vec<(usize, usize)>,
        pieces: usize,
        out: &mut HashSet<Vec<(usize, usize)>>,
    ) {
        let last = *path.last().expect("paths start at a terminal");
        if path.len() > 1 && terminal[last] {
            let first = path[0];
            ends.push((first.min(last), first.max(last)));
            if free.iter().all(|f| !f) {
                let mut key = ends.clone();
                key.sort();
                out.insert(key);
            } else if pieces > 1 {
                let starts: Vec<usize> = (0..free.len())
                    .filter(|&s| free[s] && terminal[s])
                    .collect();
                for s in starts {
                    free[s] = false;
                    let mut next = vec![s];
                    covers(adj, terminal, free, &mut next, ends, pieces - 1, out);
                    free[s] = true;
                }
            }
            ends.pop();
        }
        for &v in &adj[last] {
            if free[v] {
                free[v] = false;
                path.push(v);
                covers(adj, terminal, free, path, ends, pieces, out);
                path.pop();
                free[v] = true;
            }
        }
    }

    #[test]
    fn domino_is_crossed_in_exactly_two_ways() {
        let mut b = Builder::default();
        let d = b.domino("D");
        let mut adj = vec![Vec::new(); 8];
        for &(u, v, _) in &b.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut terminal = vec![false; 8];
        for t in [d.x1, d.y1, d.x2, d.y2] {
            terminal[t] = true;
        }
        let mut found = HashSet::new();
        for s in [d.x1, d.y1, d.x2, d.y2] {
            let mut free = vec![true; 8];
            free[s] = false;
            covers(
                &adj,
                &terminal,
                &mut free,
                &mut vec![s],
                &mut Vec::new(),
                2,
                &mut found,
            );
        }
        let pair = |u: usize, v: usize| vec![(u.min(v), u.max(v))];
        let want: HashSet<_> = [pair(d.x1, d.y1), pair(d.x2, d.y2)].into_iter().collect();
        assert_eq!(found, want);
        for first in [true, false] {
            let mut walk = Vec::new();
            d.traverse(first, &mut walk);
            assert!(walk.windows(2).all(|w| adj[w[0]].contains(&w[1])));
        }
    }
}
