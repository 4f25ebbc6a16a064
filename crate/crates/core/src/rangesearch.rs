//! Static range trees with maximum-priority queries and a two-set pair structure.
//!
//! A [`RangeTree`] answers "highest-priority point inside a box". When it is
//! built with an exclusion dimension, every last-layer node keeps the three
//! best points with pairwise distinct coordinates on that dimension. That is
//! enough to answer the same query with up to two forbidden values.
//!
//! A [`PairStructure`] holds three-dimensional points `P` and two-dimensional
//! points `Q` and finds a pair `p`, `q` inside given ranges with `p_x < q_x`
//! (and optionally `p_y < q_y`).

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RangeError {
    #[error("point or box has {found} coordinates, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("a range tree needs at least one dimension")]
    NoDimensions,
    #[error("tree was built to exclude on dimension {built:?}, query asks for {requested}")]
    ExclusionDim {
        built: Option<usize>,
        requested: usize,
    },
    #[error("at most two forbidden values are supported, got {0}")]
    TooManyForbidden(usize),
}

/// A point with a priority and an opaque handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrioritizedPoint {
    pub coords: Vec<i64>,
    pub priority: i64,
    pub payload: usize,
}

impl PrioritizedPoint {
    pub fn new(coords: Vec<i64>, priority: i64, payload: usize) -> Self {
        Self {
            coords,
            priority,
            payload,
        }
    }

    pub fn in_box(&self, bx: &[(i64, i64)]) -> bool {
        self.coords
            .iter()
            .zip(bx)
            .all(|(&c, &(lo, hi))| lo <= c && c <= hi)
    }
}

/// Total order used for "best": higher priority, then smaller payload, then
/// smaller input index.
fn better(points: &[PrioritizedPoint], a: u32, b: u32) -> bool {
    let (pa, pb) = (&points[a as usize], &points[b as usize]);
    match pb.priority.cmp(&pa.priority) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => (pa.payload, a) < (pb.payload, b),
    }
}

const NONE: u32 = u32::MAX;

enum Layer {
    Inner {
        dim: usize,
        keys: Vec<i64>,
        nodes: Vec<InnerNode>,
    },
    Last {
        dim: usize,
        keys: Vec<i64>,
        /// Heap-indexed segment tree, `width` entries per node.
        best: Vec<u32>,
    },
}

struct InnerNode {
    lo: u32,
    hi: u32,
    children: Option<(u32, u32)>,
    sub: Layer,
}

/// Static multidimensional range tree over prioritized points.
pub struct RangeTree {
    dims: usize,
    exclusion: Option<usize>,
    width: usize,
    points: Vec<PrioritizedPoint>,
    root: Option<Layer>,
}

impl std::fmt::Debug for RangeTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RangeTree")
            .field("dims", &self.dims)
            .field("exclusion", &self.exclusion)
            .field("points", &self.points.len())
            .finish()
    }
}

impl RangeTree {
    /// Builds a tree answering [`RangeTree::query_max`].
    pub fn build(points: Vec<PrioritizedPoint>, dims: usize) -> Result<Self, RangeError> {
        Self::construct(points, dims, None)
    }

    /// Builds a tree that also answers [`RangeTree::query_max_excluding`] on
    /// dimension `dim`.
    pub fn build_excluding(
        points: Vec<PrioritizedPoint>,
        dims: usize,
        dim: usize,
    ) -> Result<Self, RangeError> {
        if dim >= dims {
            return Err(RangeError::ExclusionDim {
                built: None,
                requested: dim,
            });
        }
        Self::construct(points, dims, Some(dim))
    }

    fn construct(
        points: Vec<PrioritizedPoint>,
        dims: usize,
        exclusion: Option<usize>,
    ) -> Result<Self, RangeError> {
        if dims == 0 {
            return Err(RangeError::NoDimensions);
        }
        if let Some(p) = points.iter().find(|p| p.coords.len() != dims) {
            return Err(RangeError::Arity {
                expected: dims,
                found: p.coords.len(),
            });
        }
        let width = if exclusion.is_some() { 3 } else { 1 };
        let mut tree = Self {
            dims,
            exclusion,
            width,
            points,
            root: None,
        };
        if !tree.points.is_empty() {
            let ids: Vec<u32> = (0..tree.points.len() as u32).collect();
            tree.root = Some(tree.build_layer(0, ids));
        }
        Ok(tree)
    }

    fn build_layer(&self, dim: usize, mut ids: Vec<u32>) -> Layer {
        ids.sort_by_key(|&i| self.points[i as usize].coords[dim]);
        let keys: Vec<i64> = ids
            .iter()
            .map(|&i| self.points[i as usize].coords[dim])
            .collect();
        if dim + 1 == self.dims {
            let mut best = vec![NONE; 4 * ids.len() * self.width];
            self.build_last(&ids, 1, 0, ids.len(), &mut best);
            Layer::Last { dim, keys, best }
        } else {
            let mut nodes = Vec::with_capacity(2 * ids.len());
            self.build_inner(dim, &ids, 0, ids.len(), &mut nodes);
            Layer::Inner { dim, keys, nodes }
        }
    }

    fn build_inner(
        &self,
        dim: usize,
        ids: &[u32],
        lo: usize,
        hi: usize,
        nodes: &mut Vec<InnerNode>,
    ) -> u32 {
        let sub = self.build_layer(dim + 1, ids[lo..hi].to_vec());
        let at = nodes.len() as u32;
        nodes.push(InnerNode {
            lo: lo as u32,
            hi: hi as u32,
            children: None,
            sub,
        });
        if hi - lo > 1 {
            let mid = (lo + hi) / 2;
            let l = self.build_inner(dim, ids, lo, mid, nodes);
            let r = self.build_inner(dim, ids, mid, hi, nodes);
            nodes[at as usize].children = Some((l, r));
        }
        at
    }

    fn build_last(&self, ids: &[u32], node: usize, lo: usize, hi: usize, best: &mut [u32]) {
        let w = self.width;
        if hi - lo == 1 {
            best[node * w] = ids[lo];
            return;
        }
        let mid = (lo + hi) / 2;
        self.build_last(ids, 2 * node, lo, mid, best);
        self.build_last(ids, 2 * node + 1, mid, hi, best);
        let merged = self.merge(
            &best[2 * node * w..2 * node * w + w],
            &best[(2 * node + 1) * w..(2 * node + 1) * w + w],
        );
        best[node * w..node * w + w].copy_from_slice(&merged[..w]);
    }

    /// Merges two best-lists, keeping distinct exclusion coordinates.
    fn merge(&self, a: &[u32], b: &[u32]) -> [u32; 3] {
        let mut out = [NONE; 3];
        let (mut i, mut j, mut len) = (0, 0, 0);
        while len < self.width {
            let ai = a.get(i).copied().filter(|&x| x != NONE);
            let bj = b.get(j).copied().filter(|&x| x != NONE);
            let next = match (ai, bj) {
                (None, None) => break,
                (Some(x), None) => {
                    i += 1;
                    x
                }
                (None, Some(y)) => {
                    j += 1;
                    y
                }
                (Some(x), Some(y)) => {
                    if better(&self.points, x, y) {
                        i += 1;
                        x
                    } else {
                        j += 1;
                        y
                    }
                }
            };
            let fresh = match self.exclusion {
                None => true,
                Some(d) => {
                    let c = self.points[next as usize].coords[d];
                    out[..len]
                        .iter()
                        .all(|&o| self.points[o as usize].coords[d] != c)
                }
            };
            if fresh {
                out[len] = next;
                len += 1;
            }
        }
        out
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PrioritizedPoint] {
        &self.points
    }

    /// Highest-priority point inside the closed box, if any.
    pub fn query_max(&self, bx: &[(i64, i64)]) -> Result<Option<&PrioritizedPoint>, RangeError> {
        self.check_box(bx)?;
        Ok(self.search(bx, &[], 0).map(|i| &self.points[i as usize]))
    }

    /// Highest-priority point inside the box whose coordinate on `dim` avoids
    /// every forbidden value.
    pub fn query_max_excluding(
        &self,
        bx: &[(i64, i64)],
        dim: usize,
        forbidden: &[i64],
    ) -> Result<Option<&PrioritizedPoint>, RangeError> {
        self.check_box(bx)?;
        if self.exclusion != Some(dim) {
            return Err(RangeError::ExclusionDim {
                built: self.exclusion,
                requested: dim,
            });
        }
        if forbidden.len() > 2 {
            return Err(RangeError::TooManyForbidden(forbidden.len()));
        }
        Ok(self
            .search(bx, forbidden, dim)
            .map(|i| &self.points[i as usize]))
    }

    fn check_box(&self, bx: &[(i64, i64)]) -> Result<(), RangeError> {
        if bx.len() != self.dims {
            return Err(RangeError::Arity {
                expected: self.dims,
                found: bx.len(),
            });
        }
        Ok(())
    }

    fn search(&self, bx: &[(i64, i64)], forbidden: &[i64], fdim: usize) -> Option<u32> {
        if bx.iter().any(|&(lo, hi)| lo > hi) {
            return None;
        }
        let mut best = NONE;
        if let Some(root) = &self.root {
            self.search_layer(root, bx, forbidden, fdim, &mut best);
        }
        (best != NONE).then_some(best)
    }

    fn search_layer(
        &self,
        layer: &Layer,
        bx: &[(i64, i64)],
        forbidden: &[i64],
        fdim: usize,
        best: &mut u32,
    ) {
        match layer {
            Layer::Inner { dim, keys, nodes } => {
                let (l, r) = span(keys, bx[*dim]);
                if l < r {
                    self.search_inner(nodes, 0, l, r, bx, forbidden, fdim, best);
                }
            }
            Layer::Last {
                dim,
                keys,
                best: lists,
            } => {
                let (l, r) = span(keys, bx[*dim]);
                if l < r {
                    self.search_last(lists, 1, 0, keys.len(), l, r, forbidden, fdim, best);
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn search_inner(
        &self,
        nodes: &[InnerNode],
        at: u32,
        l: usize,
        r: usize,
        bx: &[(i64, i64)],
        forbidden: &[i64],
        fdim: usize,
        best: &mut u32,
    ) {
        let node = &nodes[at as usize];
        let (lo, hi) = (node.lo as usize, node.hi as usize);
        if r <= lo || hi <= l {
            return;
        }
        if l <= lo && hi <= r {
            self.search_layer(&node.sub, bx, forbidden, fdim, best);
            return;
        }
        if let Some((a, b)) = node.children {
            self.search_inner(nodes, a, l, r, bx, forbidden, fdim, best);
            self.search_inner(nodes, b, l, r, bx, forbidden, fdim, best);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn search_last(
        &self,
        lists: &[u32],
        node: usize,
        lo: usize,
        hi: usize,
        l: usize,
        r: usize,
        forbidden: &[i64],
        fdim: usize,
        best: &mut u32,
    ) {
        if r <= lo || hi <= l {
            return;
        }
        if l <= lo && hi <= r {
            let w = self.width;
            let pick = lists[node * w..node * w + w]
                .iter()
                .copied()
                .take_while(|&x| x != NONE)
                .find(|&x| !forbidden.contains(&self.points[x as usize].coords[fdim]));
            if let Some(x) = pick {
                if *best == NONE || better(&self.points, x, *best) {
                    *best = x;
                }
            }
            return;
        }
        let mid = (lo + hi) / 2;
        self.search_last(lists, 2 * node, lo, mid, l, r, forbidden, fdim, best);
        self.search_last(lists, 2 * node + 1, mid, hi, l, r, forbidden, fdim, best);
    }
}

/// Positions `[l, r)` of sorted keys inside the closed interval.
fn span(keys: &[i64], (lo, hi): (i64, i64)) -> (usize, usize) {
    (
        keys.partition_point(|&k| k < lo),
        keys.partition_point(|&k| k <= hi),
    )
}

/// Three-dimensional points `P` and two-dimensional points `Q` supporting
/// the two pair-existence queries.
pub struct PairStructure {
    p: Vec<[i64; 3]>,
    q: Vec<[i64; 2]>,
    /// Minimum `p_x` over `P` (priority is `-p_x`).
    p_min_x: RangeTree,
    /// Maximum `q_x` over `Q`.
    q_max_x: RangeTree,
    xnodes: Vec<XNode>,
}

impl std::fmt::Debug for PairStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PairStructure")
            .field("p", &self.p.len())
            .field("q", &self.q.len())
            .finish()
    }
}

/// First-layer node: a range of distinct x values.
struct XNode {
    lo: i64,
    hi: i64,
    children: Option<(usize, usize)>,
    ynodes: Vec<YNode>,
}

/// Second-layer node: a range of distinct y values inside its x node.
struct YNode {
    lo: i64,
    hi: i64,
    children: Option<(usize, usize)>,
    q_max_x: u32,
    q_max_y: u32,
    z: ZTree,
}

/// Third layer over the `P` points of a second-layer node, ordered by z.
/// Each segment node keeps its minimum-x and minimum-y point and a
/// precomputed dominated pair against the `Q` points of the owning node.
struct ZTree {
    keys: Vec<i64>,
    min_x: Vec<u32>,
    min_y: Vec<u32>,
    pair: Vec<(u32, u32)>,
}

/// Aggregates over the part of a node that meets the query.
#[derive(Clone, Copy)]
struct Agg {
    p_min_x: u32,
    p_min_y: u32,
    q_max_x: u32,
    q_max_y: u32,
    pair: (u32, u32),
}

impl Agg {
    const EMPTY: Agg = Agg {
        p_min_x: NONE,
        p_min_y: NONE,
        q_max_x: NONE,
        q_max_y: NONE,
        pair: (NONE, NONE),
    };
}

impl PairStructure {
    pub fn build(p: Vec<[i64; 3]>, q: Vec<[i64; 2]>) -> Self {
        let pts = |v: &[i64], i: usize, pr: i64| PrioritizedPoint::new(v.to_vec(), pr, i);
        let p_min_x = RangeTree::build(
            p.iter()
                .enumerate()
                .map(|(i, c)| pts(c, i, -c[0]))
                .collect(),
            3,
        )
        .expect("arity is fixed");
        let q_max_x = RangeTree::build(
            q.iter().enumerate().map(|(i, c)| pts(c, i, c[0])).collect(),
            2,
        )
        .expect("arity is fixed");
        // Dominance lookups during construction: maximum q_y inside a box.
        let q_max_y = RangeTree::build(
            q.iter().enumerate().map(|(i, c)| pts(c, i, c[1])).collect(),
            2,
        )
        .expect("arity is fixed");
        let mut s = Self {
            p,
            q,
            p_min_x,
            q_max_x,
            xnodes: Vec::new(),
        };
        let mut xs: Vec<i64> =
            s.p.iter()
                .map(|c| c[0])
                .chain(s.q.iter().map(|c| c[0]))
                .collect();
        xs.sort_unstable();
        xs.dedup();
        if !xs.is_empty() {
            let pi: Vec<u32> = (0..s.p.len() as u32).collect();
            let qi: Vec<u32> = (0..s.q.len() as u32).collect();
            let mut nodes = Vec::new();
            s.build_x(&xs, pi, qi, &q_max_y, &mut nodes);
            s.xnodes = nodes;
        }
        s
    }

    fn build_x(
        &self,
        xs: &[i64],
        pi: Vec<u32>,
        qi: Vec<u32>,
        dom: &RangeTree,
        nodes: &mut Vec<XNode>,
    ) -> usize {
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        let mut ys: Vec<i64> = pi
            .iter()
            .map(|&i| self.p[i as usize][1])
            .chain(qi.iter().map(|&i| self.q[i as usize][1]))
            .collect();
        ys.sort_unstable();
        ys.dedup();
        let mut ynodes = Vec::new();
        if !ys.is_empty() {
            self.build_y(&ys, (lo, hi), pi.clone(), qi.clone(), dom, &mut ynodes);
        }
        let at = nodes.len();
        nodes.push(XNode {
            lo,
            hi,
            children: None,
            ynodes,
        });
        if xs.len() > 1 {
            let mid = xs.len() / 2;
            let split = xs[mid];
            let (pl, pr): (Vec<u32>, Vec<u32>) =
                pi.iter().partition(|&&i| self.p[i as usize][0] < split);
            let (ql, qr): (Vec<u32>, Vec<u32>) =
                qi.iter().partition(|&&i| self.q[i as usize][0] < split);
            let l = self.build_x(&xs[..mid], pl, ql, dom, nodes);
            let r = self.build_x(&xs[mid..], pr, qr, dom, nodes);
            nodes[at].children = Some((l, r));
        }
        at
    }

    fn build_y(
        &self,
        ys: &[i64],
        xr: (i64, i64),
        pi: Vec<u32>,
        qi: Vec<u32>,
        dom: &RangeTree,
        nodes: &mut Vec<YNode>,
    ) -> usize {
        let (lo, hi) = (ys[0], ys[ys.len() - 1]);
        let q_max_x = self.extreme_q(&qi, 0);
        let q_max_y = self.extreme_q(&qi, 1);
        let z = self.build_z(pi.clone(), xr, (lo, hi), dom);
        let at = nodes.len();
        nodes.push(YNode {
            lo,
            hi,
            children: None,
            q_max_x,
            q_max_y,
            z,
        });
        if ys.len() > 1 {
            let mid = ys.len() / 2;
            let split = ys[mid];
            let (pl, pr): (Vec<u32>, Vec<u32>) =
                pi.iter().partition(|&&i| self.p[i as usize][1] < split);
            let (ql, qr): (Vec<u32>, Vec<u32>) =
                qi.iter().partition(|&&i| self.q[i as usize][1] < split);
            let l = self.build_y(&ys[..mid], xr, pl, ql, dom, nodes);
            let r = self.build_y(&ys[mid..], xr, pr, qr, dom, nodes);
            nodes[at].children = Some((l, r));
        }
        at
    }

    fn extreme_q(&self, qi: &[u32], c: usize) -> u32 {
        qi.iter()
            .copied()
            .max_by_key(|&i| (self.q[i as usize][c], std::cmp::Reverse(i)))
            .unwrap_or(NONE)
    }

    fn build_z(&self, mut pi: Vec<u32>, xr: (i64, i64), yr: (i64, i64), dom: &RangeTree) -> ZTree {
        pi.sort_by_key(|&i| (self.p[i as usize][2], i));
        let n = pi.len();
        let mut t = ZTree {
            keys: pi.iter().map(|&i| self.p[i as usize][2]).collect(),
            min_x: vec![NONE; 4 * n],
            min_y: vec![NONE; 4 * n],
            pair: vec![(NONE, NONE); 4 * n],
        };
        if n > 0 {
            self.fill_z(&mut t, &pi, 1, 0, n, xr, yr, dom);
        }
        t
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_z(
        &self,
        t: &mut ZTree,
        pi: &[u32],
        node: usize,
        lo: usize,
        hi: usize,
        xr: (i64, i64),
        yr: (i64, i64),
        dom: &RangeTree,
    ) {
        if hi - lo == 1 {
            let p = pi[lo];
            let c = self.p[p as usize];
            t.min_x[node] = p;
            t.min_y[node] = p;
            let bx = [
                (c[0].saturating_add(1).max(xr.0), xr.1),
                (c[1].saturating_add(1).max(yr.0), yr.1),
            ];
            if let Ok(Some(q)) = dom.query_max(&bx) {
                t.pair[node] = (p, q.payload as u32);
            }
            return;
        }
        let mid = (lo + hi) / 2;
        self.fill_z(t, pi, 2 * node, lo, mid, xr, yr, dom);
        self.fill_z(t, pi, 2 * node + 1, mid, hi, xr, yr, dom);
        t.min_x[node] = self.min_p(t.min_x[2 * node], t.min_x[2 * node + 1], 0);
        t.min_y[node] = self.min_p(t.min_y[2 * node], t.min_y[2 * node + 1], 1);
        t.pair[node] = if t.pair[2 * node].0 != NONE {
            t.pair[2 * node]
        } else {
            t.pair[2 * node + 1]
        };
    }

    fn min_p(&self, a: u32, b: u32, c: usize) -> u32 {
        match (a, b) {
            (NONE, x) | (x, NONE) => x,
            _ => {
                if (self.p[a as usize][c], a) <= (self.p[b as usize][c], b) {
                    a
                } else {
                    b
                }
            }
        }
    }

    fn max_q(&self, a: u32, b: u32, c: usize) -> u32 {
        match (a, b) {
            (NONE, x) | (x, NONE) => x,
            _ => {
                if (self.q[a as usize][c], std::cmp::Reverse(a))
                    >= (self.q[b as usize][c], std::cmp::Reverse(b))
                {
                    a
                } else {
                    b
                }
            }
        }
    }

    fn combine(&self, a: Agg, b: Agg) -> Agg {
        Agg {
            p_min_x: self.min_p(a.p_min_x, b.p_min_x, 0),
            p_min_y: self.min_p(a.p_min_y, b.p_min_y, 1),
            q_max_x: self.max_q(a.q_max_x, b.q_max_x, 0),
            q_max_y: self.max_q(a.q_max_y, b.q_max_y, 1),
            pair: if a.pair.0 != NONE { a.pair } else { b.pair },
        }
    }

    pub fn p_points(&self) -> &[[i64; 3]] {
        &self.p
    }

    pub fn q_points(&self) -> &[[i64; 2]] {
        &self.q
    }

    /// Indices `(i, j)` with `P[i]` in `rx × ryp × rz`, `Q[j]` in `rx × ryq`
    /// and `P[i].x < Q[j].x`, if such a pair exists.
    pub fn query_disjoint(
        &self,
        rx: (i64, i64),
        ryp: (i64, i64),
        ryq: (i64, i64),
        rz: (i64, i64),
    ) -> Option<(usize, usize)> {
        let p = self.p_min_x.query_max(&[rx, ryp, rz]).ok()??;
        let q = self.q_max_x.query_max(&[rx, ryq]).ok()??;
        (p.coords[0] < q.coords[0]).then_some((p.payload, q.payload))
    }

    /// Indices `(i, j)` with `P[i]` in `rx × ry × rz`, `Q[j]` in `rx × ry`,
    /// `P[i].x < Q[j].x` and `P[i].y < Q[j].y`, if such a pair exists.
    pub fn query_nested(
        &self,
        rx: (i64, i64),
        ry: (i64, i64),
        rz: (i64, i64),
    ) -> Option<(usize, usize)> {
        if self.xnodes.is_empty() || rx.0 > rx.1 || ry.0 > ry.1 || rz.0 > rz.1 {
            return None;
        }
        let agg = self.walk_x(0, rx, ry, rz);
        (agg.pair.0 != NONE).then_some((agg.pair.0 as usize, agg.pair.1 as usize))
    }

    fn walk_x(&self, at: usize, rx: (i64, i64), ry: (i64, i64), rz: (i64, i64)) -> Agg {
        let node = &self.xnodes[at];
        if node.hi < rx.0 || rx.1 < node.lo {
            return Agg::EMPTY;
        }
        if rx.0 <= node.lo && node.hi <= rx.1 {
            if node.ynodes.is_empty() {
                return Agg::EMPTY;
            }
            return self.walk_y(&node.ynodes, 0, ry, rz);
        }
        let Some((l, r)) = node.children else {
            return Agg::EMPTY;
        };
        let a = self.walk_x(l, rx, ry, rz);
        let b = self.walk_x(r, rx, ry, rz);
        let mut out = self.combine(a, b);
        // Left child has strictly smaller x, so only y must be checked.
        if out.pair.0 == NONE && a.p_min_y != NONE && b.q_max_y != NONE {
            let (p, q) = (a.p_min_y, b.q_max_y);
            if self.p[p as usize][1] < self.q[q as usize][1] {
                out.pair = (p, q);
            }
        }
        out
    }

    fn walk_y(&self, nodes: &[YNode], at: usize, ry: (i64, i64), rz: (i64, i64)) -> Agg {
        let node = &nodes[at];
        if node.hi < ry.0 || ry.1 < node.lo {
            return Agg::EMPTY;
        }
        if ry.0 <= node.lo && node.hi <= ry.1 {
            let mut agg = Agg {
                q_max_x: node.q_max_x,
                q_max_y: node.q_max_y,
                ..Agg::EMPTY
            };
            let t = &node.z;
            let (l, r) = span(&t.keys, rz);
            if l < r {
                self.walk_z(t, 1, 0, t.keys.len(), l, r, &mut agg);
            }
            return agg;
        }
        let Some((l, r)) = node.children else {
            return Agg::EMPTY;
        };
        let a = self.walk_y(nodes, l, ry, rz);
        let b = self.walk_y(nodes, r, ry, rz);
        let mut out = self.combine(a, b);
        // Left child has strictly smaller y, so only x must be checked.
        if out.pair.0 == NONE && a.p_min_x != NONE && b.q_max_x != NONE {
            let (p, q) = (a.p_min_x, b.q_max_x);
            if self.p[p as usize][0] < self.q[q as usize][0] {
                out.pair = (p, q);
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn walk_z(
        &self,
        t: &ZTree,
        node: usize,
        lo: usize,
        hi: usize,
        l: usize,
        r: usize,
        agg: &mut Agg,
    ) {
        if r <= lo || hi <= l {
            return;
        }
        if l <= lo && hi <= r {
            agg.p_min_x = self.min_p(agg.p_min_x, t.min_x[node], 0);
            agg.p_min_y = self.min_p(agg.p_min_y, t.min_y[node], 1);
            if agg.pair.0 == NONE {
                agg.pair = t.pair[node];
            }
            return;
        }
        let mid = (lo + hi) / 2;
        self.walk_z(t, 2 * node, lo, mid, l, r, agg);
        self.walk_z(t, 2 * node + 1, mid, hi, l, r, agg);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scan_max<'a>(
        pts: &'a [PrioritizedPoint],
        bx: &[(i64, i64)],
        dim: usize,
        forbidden: &[i64],
    ) -> Option<&'a PrioritizedPoint> {
        let mut best: Option<(usize, &PrioritizedPoint)> = None;
        for (i, p) in pts.iter().enumerate() {
            if !p.in_box(bx) || forbidden.contains(&p.coords[dim]) {
                continue;
            }
            let key = (std::cmp::Reverse(p.priority), p.payload, i);
            if best.is_none_or(|(j, b)| key < (std::cmp::Reverse(b.priority), b.payload, j)) {
                best = Some((i, p));
            }
        }
        best.map(|(_, p)| p)
    }

    fn random_points(
        rng: &mut ChaCha8Rng,
        n: usize,
        dims: usize,
        span: i64,
    ) -> Vec<PrioritizedPoint> {
        (0..n)
            .map(|i| {
                PrioritizedPoint::new(
                    (0..dims).map(|_| rng.gen_range(1..=span)).collect(),
                    rng.gen_range(-50..=50),
                    i % 97,
                )
            })
            .collect()
    }

    fn random_box(rng: &mut ChaCha8Rng, dims: usize, span: i64) -> Vec<(i64, i64)> {
        (0..dims)
            .map(|_| {
                let a = rng.gen_range(0..=span + 1);
                let b = rng.gen_range(0..=span + 1);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    #[test]
    fn empty_tree_answers_none() {
        let t = RangeTree::build(Vec::new(), 2).unwrap();
        assert_eq!(t.query_max(&[(1, 5), (1, 5)]).unwrap(), None);
    }

    #[test]
    fn single_point_is_found_by_every_containing_box() {
        let p = PrioritizedPoint::new(vec![3, 4], 7, 0);
        let t = RangeTree::build(vec![p.clone()], 2).unwrap();
        assert_eq!(t.query_max(&[(3, 3), (1, 9)]).unwrap(), Some(&p));
        assert_eq!(t.query_max(&[(1, 9), (4, 4)]).unwrap(), Some(&p));
        assert_eq!(t.query_max(&[(4, 9), (1, 9)]).unwrap(), None);
    }

    #[test]
    fn two_points_pick_higher_priority() {
        let a = PrioritizedPoint::new(vec![1, 1], 5, 0);
        let b = PrioritizedPoint::new(vec![2, 2], 3, 1);
        let t = RangeTree::build(vec![a.clone(), b], 2).unwrap();
        assert_eq!(t.query_max(&[(1, 2), (1, 2)]).unwrap(), Some(&a));
        assert_eq!(t.query_max(&[(3, 4), (3, 4)]).unwrap(), None);
    }

    #[test]
    fn excluding_skips_forbidden_coordinate() {
        let a = PrioritizedPoint::new(vec![1], 9, 0);
        let b = PrioritizedPoint::new(vec![2], 4, 1);
        let t = RangeTree::build_excluding(vec![a, b.clone()], 1, 0).unwrap();
        assert_eq!(t.query_max_excluding(&[(1, 2)], 0, &[1]).unwrap(), Some(&b));
        assert_eq!(t.query_max_excluding(&[(1, 2)], 0, &[1, 2]).unwrap(), None);
    }

    #[test]
    fn arity_and_exclusion_errors() {
        let p = PrioritizedPoint::new(vec![1, 2], 0, 0);
        assert_eq!(
            RangeTree::build(vec![p.clone()], 3).unwrap_err(),
            RangeError::Arity {
                expected: 3,
                found: 2
            }
        );
        let t = RangeTree::build(vec![p], 2).unwrap();
        assert!(t.query_max(&[(1, 1)]).is_err());
        assert!(t.query_max_excluding(&[(1, 1), (1, 2)], 0, &[]).is_err());
    }

    #[test]
    fn random_three_dim_queries_match_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts = random_points(&mut rng, 10_000, 3, 200);
        let t = RangeTree::build(pts.clone(), 3).unwrap();
        for _ in 0..1000 {
            let bx = random_box(&mut rng, 3, 200);
            assert_eq!(t.query_max(&bx).unwrap(), scan_max(&pts, &bx, 0, &[]));
        }
    }

    #[test]
    fn random_excluding_queries_match_filtered_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for dims in 1..=4 {
            let pts = random_points(&mut rng, 800, dims, 12);
            for dim in 0..dims {
                let t = RangeTree::build_excluding(pts.clone(), dims, dim).unwrap();
                for _ in 0..300 {
                    let bx = random_box(&mut rng, dims, 12);
                    let nf = rng.gen_range(0..=2);
                    let forbidden: Vec<i64> = (0..nf).map(|_| rng.gen_range(1..=12)).collect();
                    assert_eq!(
                        t.query_max_excluding(&bx, dim, &forbidden).unwrap(),
                        scan_max(&pts, &bx, dim, &forbidden)
                    );
                }
            }
        }
    }

    #[test]
    fn pair_query_small_cases() {
        let s = PairStructure::build(vec![[1, 1, 1]], vec![[2, 2]]);
        let full = (i64::MIN, i64::MAX);
        assert_eq!(s.query_disjoint(full, full, full, full), Some((0, 0)));
        assert_eq!(s.query_nested(full, full, full), Some((0, 0)));
        let s = PairStructure::build(vec![[2, 1, 1]], vec![[1, 2]]);
        assert_eq!(s.query_disjoint(full, full, full, full), None);
        let s = PairStructure::build(vec![[1, 3, 1]], vec![[2, 2]]);
        assert_eq!(s.query_nested(full, full, full), None);
    }

    fn inside(v: i64, r: (i64, i64)) -> bool {
        r.0 <= v && v <= r.1
    }

    #[test]
    fn random_pair_queries_match_quadratic_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for round in 0..40 {
            let span = if round % 2 == 0 { 8 } else { 60 };
            let np = rng.gen_range(0..=200);
            let nq = rng.gen_range(0..=200);
            let p: Vec<[i64; 3]> = (0..np)
                .map(|_| {
                    [
                        rng.gen_range(1..=span),
                        rng.gen_range(1..=span),
                        rng.gen_range(1..=span),
                    ]
                })
                .collect();
            let q: Vec<[i64; 2]> = (0..nq)
                .map(|_| [rng.gen_range(1..=span), rng.gen_range(1..=span)])
                .collect();
            let s = PairStructure::build(p.clone(), q.clone());
            for _ in 0..50 {
                let r = random_box(&mut rng, 5, span);
                let (rx, ryp, ryq, rz) = (r[0], r[1], r[2], r[3]);
                let want = p.iter().any(|a| {
                    inside(a[0], rx)
                        && inside(a[1], ryp)
                        && inside(a[2], rz)
                        && q.iter()
                            .any(|b| inside(b[0], rx) && inside(b[1], ryq) && a[0] < b[0])
                });
                let got = s.query_disjoint(rx, ryp, ryq, rz);
                assert_eq!(got.is_some(), want);
                if let Some((i, j)) = got {
                    let (a, b) = (p[i], q[j]);
                    assert!(inside(a[0], rx) && inside(a[1], ryp) && inside(a[2], rz));
                    assert!(inside(b[0], rx) && inside(b[1], ryq) && a[0] < b[0]);
                }
                let (ry, rz) = (r[1], r[4]);
                let want = p.iter().any(|a| {
                    inside(a[0], rx)
                        && inside(a[1], ry)
                        && inside(a[2], rz)
                        && q.iter().any(|b| {
                            inside(b[0], rx) && inside(b[1], ry) && a[0] < b[0] && a[1] < b[1]
                        })
                });
                let got = s.query_nested(rx, ry, rz);
                assert_eq!(got.is_some(), want, "round {round}");
                if let Some((i, j)) = got {
                    let (a, b) = (p[i], q[j]);
                    assert!(inside(a[0], rx) && inside(a[1], ry) && inside(a[2], rz));
                    assert!(inside(b[0], rx) && inside(b[1], ry));
                    assert!(a[0] < b[0] && a[1] < b[1]);
                }
            }
        }
    }
}
