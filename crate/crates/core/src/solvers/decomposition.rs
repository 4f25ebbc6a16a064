//! Exact path and tree decompositions of small graphs, and their nice forms.
//!
//! Pathwidth is computed as the vertex separation number by dynamic
//! programming over vertex subsets. Treewidth uses the analogous subset
//! recurrence over elimination orderings.

use super::SolveError;

/// Largest vertex count accepted by the exact subset recurrences.
pub const MAX_DECOMPOSITION_VERTICES: usize = 16;

/// Node of a nice decomposition. Nodes are stored children-first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NiceNode {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

/// A sequence of bags; consecutive bags form a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub width: usize,
}

/// Bags arranged in a rooted tree (`parent[root] == None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
    pub width: usize,
}

/// A nice decomposition: node list (children before parents) with the bag of
/// every node. The last node is the root and has an empty bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub bags: Vec<Vec<usize>>,
}

impl NiceDecomposition {
    fn push(&mut self, node: NiceNode, bag: Vec<usize>) -> usize {
        self.nodes.push(node);
        self.bags.push(bag);
        self.nodes.len() - 1
    }

    /// Moves from the bag of `at` to `target` by forgetting, then introducing.
    fn transition(&mut self, mut at: usize, target: &[usize]) -> usize {
        let current = self.bags[at].clone();
        for &v in current.iter().filter(|v| !target.contains(v)) {
            let bag: Vec<usize> = self.bags[at].iter().copied().filter(|&u| u != v).collect();
            at = self.push(
                NiceNode::Forget {
                    vertex: v,
                    child: at,
                },
                bag,
            );
        }
        for &v in target.iter().filter(|v| !current.contains(v)) {
            let mut bag = self.bags[at].clone();
            bag.push(v);
            bag.sort_unstable();
            at = self.push(
                NiceNode::Introduce {
                    vertex: v,
                    child: at,
                },
                bag,
            );
        }
        at
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }
}

impl PathDecomposition {
    pub fn nice(&self) -> NiceDecomposition {
        let mut out = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
        };
        let mut at = out.push(NiceNode::Leaf, Vec::new());
        for bag in &self.bags {
            at = out.transition(at, bag);
        }
        out.transition(at, &[]);
        out
    }
}

impl TreeDecomposition {
    pub fn nice(&self) -> NiceDecomposition {
        let mut out = NiceDecomposition {
            nodes: Vec::new(),
            bags: Vec::new(),
        };
        let mut children = vec![Vec::new(); self.bags.len()];
        let mut roots = Vec::new();
        for (t, p) in self.parent.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(t),
                None => roots.push(t),
            }
        }
        let mut top: Option<usize> = None;
        for r in roots {
            let sub = self.nice_subtree(r, &children, &mut out);
            let sub = out.transition(sub, &[]);
            top = Some(match top {
                None => sub,
                Some(prev) => out.push(
                    NiceNode::Join {
                        left: prev,
                        right: sub,
                    },
                    Vec::new(),
                ),
            });
        }
        if top.is_none() {
            out.push(NiceNode::Leaf, Vec::new());
        }
        out
    }

    fn nice_subtree(
        &self,
        t: usize,
        children: &[Vec<usize>],
        out: &mut NiceDecomposition,
    ) -> usize {
        let bag = &self.bags[t];
        let mut acc: Option<usize> = None;
        for &c in &children[t] {
            let sub = self.nice_subtree(c, children, out);
            let sub = out.transition(sub, bag);
            acc = Some(match acc {
                None => sub,
                Some(prev) => out.push(
                    NiceNode::Join {
                        left: prev,
                        right: sub,
                    },
                    bag.clone(),
                ),
            });
        }
        match acc {
            Some(a) => a,
            None => {
                let leaf = out.push(NiceNode::Leaf, Vec::new());
                out.transition(leaf, bag)
            }
        }
    }
}

fn masks(adj: &[Vec<usize>]) -> Result<Vec<u32>, SolveError> {
    let n = adj.len();
    if n > MAX_DECOMPOSITION_VERTICES {
        return Err(SolveError::GraphTooLarge(n));
    }
    Ok(adj
        .iter()
        .map(|list| list.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect())
}

/// Exact pathwidth with a witness path decomposition.
pub fn exact_pathwidth(adj: &[Vec<usize>]) -> Result<(usize, PathDecomposition), SolveError> {
    let nb = masks(adj)?;
    let n = adj.len();
    let full = (1u32 << n) - 1;
    let boundary = |s: u32| {
        (0..n)
            .filter(|&u| s >> u & 1 == 1 && nb[u] & !s != 0)
            .count()
    };
    let mut dp = vec![usize::MAX; 1 << n];
    let mut last = vec![0usize; 1 << n];
    dp[0] = 0;
    for s in 1..=full {
        let b = boundary(s);
        for v in (0..n).filter(|&v| s >> v & 1 == 1) {
            let cand = dp[(s & !(1 << v)) as usize].max(b);
            if cand < dp[s as usize] {
                dp[s as usize] = cand;
                last[s as usize] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let mut bags = Vec::with_capacity(n);
    let mut prefix = 0u32;
    for &v in &order {
        let mut bag: Vec<usize> = (0..n)
            .filter(|&u| prefix >> u & 1 == 1 && nb[u] & !prefix != 0)
            .collect();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        prefix |= 1 << v;
    }
    let width = bags
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(1)
        .saturating_sub(1);
    Ok((dp[full as usize], PathDecomposition { bags, width }))
}

/// Exact treewidth with a witness tree decomposition.
pub fn exact_treewidth(adj: &[Vec<usize>]) -> Result<(usize, TreeDecomposition), SolveError> {
    let nb = masks(adj)?;
    let n = adj.len();
    let full = (1u32 << n) - 1;
    // Vertices outside `s ∪ {v}` reachable from v through `s`.
    let reach = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(x) = stack.pop() {
            let mut fresh = nb[x] & !seen;
            seen |= fresh;
            out |= fresh & !s;
            fresh &= s;
            while fresh != 0 {
                let y = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                stack.push(y);
            }
        }
        out
    };
    let mut dp = vec![usize::MAX; 1 << n];
    let mut last = vec![0usize; 1 << n];
    dp[0] = 0;
    for s in 1..=full {
        for v in (0..n).filter(|&v| s >> v & 1 == 1) {
            let rest = s & !(1 << v);
            let q = reach(rest, v).count_ones() as usize;
            let cand = dp[rest as usize].max(q);
            if cand < dp[s as usize] {
                dp[s as usize] = cand;
                last[s as usize] = v;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = last[s as usize];
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    let mut eliminated = 0u32;
    for (i, &v) in order.iter().enumerate() {
        let higher = reach(eliminated, v);
        let mut bag: Vec<usize> = (0..n).filter(|&u| higher >> u & 1 == 1).collect();
        parent[i] = bag.iter().map(|&u| pos[u]).min();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        eliminated |= 1 << v;
    }
    let width = bags
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(1)
        .saturating_sub(1);
    Ok((
        dp[full as usize],
        TreeDecomposition {
            bags,
            parent,
            width,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u != v && !adj[u].contains(&v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        adj
    }

    fn cycle(n: usize) -> Vec<Vec<usize>> {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    /// Checks vertex and edge coverage and running intersection on a nice form.
    fn check_nice(adj: &[Vec<usize>], nice: &NiceDecomposition) {
        let n = adj.len();
        let mut introduced = vec![0usize; n];
        let mut forgotten = vec![0usize; n];
        for (t, node) in nice.nodes.iter().enumerate() {
            match *node {
                NiceNode::Leaf => assert!(nice.bags[t].is_empty()),
                NiceNode::Introduce { vertex, child } => {
                    assert!(child < t && !nice.bags[child].contains(&vertex));
                    introduced[vertex] += 1;
                }
                NiceNode::Forget { vertex, child } => {
                    assert!(child < t && nice.bags[child].contains(&vertex));
                    // Every neighbour of a forgotten vertex shares a bag with it.
                    forgotten[vertex] += 1;
                }
                NiceNode::Join { left, right } => {
                    assert_eq!(nice.bags[left], nice.bags[t]);
                    assert_eq!(nice.bags[right], nice.bags[t]);
                }
            }
        }
        assert!(nice.bags[nice.root()].is_empty());
        // Each vertex is forgotten exactly once, so its bags form a subtree.
        assert!(forgotten.iter().all(|&c| c == 1));
        assert!(introduced.iter().all(|&c| c >= 1));
        for (u, nbrs) in adj.iter().enumerate() {
            for &v in nbrs {
                assert!(nice.bags.iter().any(|b| b.contains(&u) && b.contains(&v)));
            }
        }
    }

    #[test]
    fn small_graph_widths() {
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(exact_pathwidth(&p4).unwrap().0, 1);
        assert_eq!(exact_pathwidth(&cycle(5)).unwrap().0, 2);
        let k4 = graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_pathwidth(&k4).unwrap().0, 3);
        assert_eq!(exact_treewidth(&k4).unwrap().0, 3);
        assert_eq!(exact_treewidth(&cycle(6)).unwrap().0, 2);
    }

    #[test]
    fn star_has_treewidth_one_and_joins() {
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let (tw, td) = exact_treewidth(&star).unwrap();
        assert_eq!(tw, 1);
        let nice = td.nice();
        check_nice(&star, &nice);
        assert_eq!(nice.width(), 1);
    }

    #[test]
    fn binary_tree_pathwidth_exceeds_treewidth() {
        // Complete binary tree of depth 3 has pathwidth 2 and treewidth 1.
        let edges: Vec<(usize, usize)> = (1..15).map(|v| ((v - 1) / 2, v)).collect();
        let t = graph(15, &edges);
        assert_eq!(exact_pathwidth(&t).unwrap().0, 2);
        let (tw, td) = exact_treewidth(&t).unwrap();
        assert_eq!(tw, 1);
        let nice = td.nice();
        check_nice(&t, &nice);
        assert!(nice
            .nodes
            .iter()
            .any(|n| matches!(n, NiceNode::Join { .. })));
    }

    #[test]
    fn too_large_graph_is_refused() {
        assert!(matches!(
            exact_pathwidth(&cycle(17)),
            Err(SolveError::GraphTooLarge(17))
        ));
    }

    fn arb_graph() -> impl Strategy<Value = Vec<Vec<usize>>> {
        (1usize..=9).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..=2 * n)
                .prop_map(move |edges| graph(n, &edges))
        })
    }

    proptest! {
        #[test]
        fn decompositions_are_valid_and_ordered(adj in arb_graph()) {
            let (pw, pd) = exact_pathwidth(&adj).unwrap();
            let (tw, td) = exact_treewidth(&adj).unwrap();
            prop_assert_eq!(pd.width, pw);
            prop_assert_eq!(td.width, tw);
            prop_assert!(tw <= pw);
            let pn = pd.nice();
            check_nice(&adj, &pn);
            prop_assert_eq!(pn.width(), pw);
            let tn = td.nice();
            check_nice(&adj, &tn);
            prop_assert_eq!(tn.width(), tw);
        }

        #[test]
        fn widths_do_not_grow_under_edge_deletion(adj in arb_graph(), pick in any::<usize>()) {
            let edges: Vec<(usize, usize)> = adj.iter().enumerate()
                .flat_map(|(u, l)| l.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                .collect();
            prop_assume!(!edges.is_empty());
            let drop = pick % edges.len();
            let rest: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &e)| e).collect();
            let smaller = graph(adj.len(), &rest);
            prop_assert!(exact_pathwidth(&smaller).unwrap().0 <= exact_pathwidth(&adj).unwrap().0);
            prop_assert!(exact_treewidth(&smaller).unwrap().0 <= exact_treewidth(&adj).unwrap().0);
        }
    }
}
