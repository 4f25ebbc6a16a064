//! Exact minimum-weight Hamiltonian cycle search for sparse graphs.
//!
//! Depth-first branch and bound over edge decisions. After every decision
//! degree rules are propagated (a vertex with two chosen edges drops the
//! rest; a vertex with only two usable edges takes both) and path fragments
//! are tracked so that no edge closes a cycle early.

use crate::instance::{TourInstance, Weight};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HamiltonStats {
    /// Branching decisions explored.
    pub nodes: u64,
    /// Hamiltonian cycles reached (each improves on the previous best).
    pub cycles: u64,
}

const UNKNOWN: i8 = 0;
const IN: i8 = 1;
const OUT: i8 = -1;

enum Change {
    Edge(usize),
    End(usize, usize),
    Len(usize, usize),
}

struct Search {
    n: usize,
    edges: Vec<(usize, usize, Weight)>,
    incident: Vec<Vec<usize>>,
    state: Vec<i8>,
    in_deg: Vec<usize>,
    free_deg: Vec<usize>,
    /// For fragment endpoints: the other endpoint and the fragment size.
    end: Vec<usize>,
    len: Vec<usize>,
    in_count: usize,
    in_weight: Weight,
    trail: Vec<Change>,
    best: Option<(Weight, Vec<usize>)>,
    stats: HamiltonStats,
}

impl Search {
    fn set(&mut self, e: usize, value: i8, queue: &mut Vec<usize>) -> bool {
        let (u, v, w) = self.edges[e];
        match self.state[e] {
            UNKNOWN => {}
            s => return s == value,
        }
        self.state[e] = value;
        self.trail.push(Change::Edge(e));
        queue.push(u);
        queue.push(v);
        if value == OUT {
            self.free_deg[u] -= 1;
            self.free_deg[v] -= 1;
            return true;
        }
        self.in_deg[u] += 1;
        self.in_deg[v] += 1;
        self.in_count += 1;
        self.in_weight += w;
        if self.in_deg[u] > 2 || self.in_deg[v] > 2 {
            return false;
        }
        let (a, b) = (self.end[u], self.end[v]);
        if a == v {
            // Closing a fragment: only the full cycle may close.
            return self.len[u] == self.n && self.in_count == self.n;
        }
        let size = self.len[u] + self.len[v];
        for (x, other) in [(a, b), (b, a)] {
            self.trail.push(Change::End(x, self.end[x]));
            self.trail.push(Change::Len(x, self.len[x]));
            self.end[x] = other;
            self.len[x] = size;
        }
        if size < self.n {
            if let Some(&f) = self.incident[a]
                .iter()
                .find(|&&f| self.state[f] == UNKNOWN && self.other(f, a) == b)
            {
                return self.set(f, OUT, queue);
            }
        }
        true
    }

    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b, _) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            if self.in_deg[v] > 2 || self.free_deg[v] < 2 {
                return false;
            }
            let forced = if self.in_deg[v] == 2 && self.free_deg[v] > 2 {
                OUT
            } else if self.free_deg[v] == 2 && self.in_deg[v] < 2 {
                IN
            } else {
                continue;
            };
            for i in 0..self.incident[v].len() {
                let e = self.incident[v][i];
                if self.state[e] == UNKNOWN && !self.set(e, forced, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Change::Edge(e) => {
                    let (u, v, w) = self.edges[e];
                    if self.state[e] == IN {
                        self.in_deg[u] -= 1;
                        self.in_deg[v] -= 1;
                        self.in_count -= 1;
                        self.in_weight -= w;
                    } else {
                        self.free_deg[u] += 1;
                        self.free_deg[v] += 1;
                    }
                    self.state[e] = UNKNOWN;
                }
                Change::End(x, old) => self.end[x] = old,
                Change::Len(x, old) => self.len[x] = old,
            }
        }
    }

    /// Twice a lower bound on the weight of any completion.
    fn double_bound(&self) -> Weight {
        let mut total = 2 * self.in_weight;
        for v in 0..self.n {
            let need = 2 - self.in_deg[v];
            if need == 0 {
                continue;
            }
            let mut ws: Vec<Weight> = self.incident[v]
                .iter()
                .filter(|&&e| self.state[e] == UNKNOWN)
                .map(|&e| self.edges[e].2)
                .collect();
            ws.sort_unstable();
            total += ws.iter().take(need).sum::<Weight>();
        }
        total
    }

    fn branch_edge(&self) -> Option<usize> {
        // Extend a fragment end when possible, preferring tight vertices.
        let mut pick: Option<(usize, usize)> = None;
        for v in 0..self.n {
            if self.in_deg[v] != 1 {
                continue;
            }
            let slack = self.free_deg[v];
            if pick.is_none_or(|(s, _)| slack < s) {
                if let Some(&e) = self.incident[v].iter().find(|&&e| self.state[e] == UNKNOWN) {
                    pick = Some((slack, e));
                }
            }
        }
        pick.map(|p| p.1)
            .or_else(|| (0..self.edges.len()).find(|&e| self.state[e] == UNKNOWN))
    }

    fn record(&mut self) {
        let mut next = vec![Vec::with_capacity(2); self.n];
        for (e, &(u, v, _)) in self.edges.iter().enumerate() {
            if self.state[e] == IN {
                next[u].push(v);
                next[v].push(u);
            }
        }
        let mut cycle = Vec::with_capacity(self.n);
        let (mut prev, mut cur) = (usize::MAX, 0);
        for _ in 0..self.n {
            cycle.push(cur);
            let nxt = if next[cur][0] != prev {
                next[cur][0]
            } else {
                next[cur][1]
            };
            prev = cur;
            cur = nxt;
        }
        self.stats.cycles += 1;
        self.best = Some((self.in_weight, cycle));
    }

    fn dfs(&mut self) {
        self.stats.nodes += 1;
        if let Some((best, _)) = &self.best {
            if self.double_bound() >= 2 * best {
                return;
            }
        }
        if self.in_count == self.n {
            self.record();
            return;
        }
        let Some(e) = self.branch_edge() else {
            return;
        };
        for value in [IN, OUT] {
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.set(e, value, &mut queue) && self.propagate(queue) {
                self.dfs();
            }
            self.undo(mark);
        }
    }
}

/// Minimum weight of a Hamiltonian cycle in the graph of `inst` (the
/// instance's own tour is ignored), with one optimal cycle as a vertex
/// sequence starting at vertex 0. `None` if the graph has no Hamiltonian
/// cycle.
pub fn min_hamiltonian_cycle(inst: &TourInstance) -> (Option<(Weight, Vec<usize>)>, HamiltonStats) {
    let n = inst.n();
    let edges = inst.edges();
    let mut incident = vec![Vec::new(); n];
    for (e, &(u, v, _)) in edges.iter().enumerate() {
        incident[u].push(e);
        incident[v].push(e);
    }
    let free_deg = incident.iter().map(Vec::len).collect();
    let mut s = Search {
        n,
        state: vec![UNKNOWN; edges.len()],
        edges,
        incident,
        in_deg: vec![0; n],
        free_deg,
        end: (0..n).collect(),
        len: vec![1; n],
        in_count: 0,
        in_weight: 0,
        trail: Vec::new(),
        best: None,
        stats: HamiltonStats::default(),
    };
    if s.propagate((0..n).collect()) {
        s.dfs();
    }
    (s.best, s.stats)
}
