//! Dynamic programming over a minimum-width decomposition of the
//! interaction graph of each pattern.
//!
//! Vertices of the interaction graph are the sequential components; two are
//! adjacent when some slot of one is immediately followed by a slot of the
//! other. A table entry maps an embedding choice for every component in the
//! current bag to the best total gain of the components below, together
//! with a witness choice for all of them.

use std::collections::HashMap;

use crate::instance::{Move, TourInstance, Weight};
use crate::seqswaps::SeqEmbedding;

use super::catalog::{pattern_catalog, CatalogEntry};
use super::context::{consistent, cross_pairs, place, search_entries, Best, Context, Tally, FREE};
use super::decomposition::{exact_pathwidth, exact_treewidth, NiceDecomposition, NiceNode};
use super::SolveError;

/// Which decomposition drives the table recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecompositionKind {
    /// Minimum-width path decomposition (no join nodes).
    #[default]
    Path,
    /// Minimum-width tree decomposition (may contain join nodes).
    Tree,
}

/// Counters gathered while running the DP.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub patterns: usize,
    pub largest_table: usize,
    /// Set if some table exceeded the product of its bag's embedding counts.
    pub table_bound_violated: bool,
    pub join_nodes: usize,
}

/// Best improving k-move, by the DP over minimum-width path decompositions.
pub fn best_move_pathwidth_dp(inst: &TourInstance, k: usize) -> Result<Option<Move>, SolveError> {
    best_move_dp(inst, k, DecompositionKind::Path, 1).map(|(m, _)| m)
}

/// Best improving k-move, by the DP over minimum-width tree decompositions.
pub fn best_move_tree_dp(inst: &TourInstance, k: usize) -> Result<Option<Move>, SolveError> {
    best_move_dp(inst, k, DecompositionKind::Tree, 1).map(|(m, _)| m)
}

/// DP over every feasible k-pattern with `threads` workers, reporting
/// statistics.
pub fn best_move_dp(
    inst: &TourInstance,
    k: usize,
    kind: DecompositionKind,
    threads: usize,
) -> Result<(Option<Move>, DpStats), SolveError> {
    let catalog = pattern_catalog(k)?;
    if k > inst.n() {
        return Ok((None, DpStats::default()));
    }
    let ctx = Context::new(inst, k);
    let entries: Vec<&CatalogEntry> = catalog.iter().collect();
    let (best, stats) = search_entries(&entries, threads, |entry, best, stats| {
        dp_entry(&ctx, entry, kind, best, stats)
    })?;
    Ok((best.finish(inst)?, stats))
}

impl Tally for DpStats {
    fn absorb(&mut self, other: Self) {
        self.patterns += other.patterns;
        self.largest_table = self.largest_table.max(other.largest_table);
        self.table_bound_violated |= other.table_bound_violated;
        self.join_nodes += other.join_nodes;
    }
}

type Table = HashMap<Vec<u32>, (Weight, Vec<u32>)>;

const UNSET: u32 = u32::MAX;

/// Exact best embedding of one pattern by the decomposition DP.
pub(crate) fn dp_entry(
    ctx: &Context,
    entry: &CatalogEntry,
    kind: DecompositionKind,
    best: &mut Best,
    stats: &mut DpStats,
) -> Result<(), SolveError> {
    let lists = ctx.component_lists(entry);
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(());
    }
    stats.patterns += 1;
    let c = entry.components.len();
    let owner = entry.owner();
    let mut adj = vec![Vec::new(); c];
    for (s, t) in cross_pairs(&owner) {
        let (a, b) = (owner[s], owner[t]);
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let nice = match kind {
        DecompositionKind::Path => exact_pathwidth(&adj)?.1.nice(),
        DecompositionKind::Tree => exact_treewidth(&adj)?.1.nice(),
    };
    let Some((gain, witness)) = run(entry, &lists, &nice, stats) else {
        return Ok(());
    };
    if !best.admits(gain) {
        return Ok(());
    }
    let mut f = vec![FREE; entry.pattern.k()];
    for (comp, &i) in witness.iter().enumerate() {
        place(
            &mut f,
            &entry.components[comp].slots,
            &lists[comp][i as usize],
        );
    }
    best.offer(ctx.inst, &entry.pattern, &f, gain)
}

fn run(
    entry: &CatalogEntry,
    lists: &[&[SeqEmbedding]],
    nice: &NiceDecomposition,
    stats: &mut DpStats,
) -> Option<(Weight, Vec<u32>)> {
    let c = entry.components.len();
    let k = entry.pattern.k();
    let mut tables: Vec<Option<Table>> = Vec::with_capacity(nice.nodes.len());
    let mut f = vec![FREE; k];
    for (t, node) in nice.nodes.iter().enumerate() {
        let bag = &nice.bags[t];
        let table = match *node {
            NiceNode::Leaf => {
                let mut table = Table::new();
                table.insert(Vec::new(), (0, vec![UNSET; c]));
                table
            }
            NiceNode::Introduce { vertex, child } => {
                let prev = tables[child].take().expect("child table is consumed once");
                let child_bag = &nice.bags[child];
                let at = bag
                    .iter()
                    .position(|&v| v == vertex)
                    .expect("introduced vertex is in bag");
                let slots = &entry.components[vertex].slots;
                let mut table = Table::with_capacity(prev.len() * lists[vertex].len());
                for (key, (g, wit)) in prev {
                    for (&comp, &i) in child_bag.iter().zip(&key) {
                        place(
                            &mut f,
                            &entry.components[comp].slots,
                            &lists[comp][i as usize],
                        );
                    }
                    for (i, emb) in lists[vertex].iter().enumerate() {
                        place(&mut f, slots, emb);
                        if !consistent(&f, slots) {
                            continue;
                        }
                        let mut nk = key.clone();
                        nk.insert(at, i as u32);
                        let mut nw = wit.clone();
                        nw[vertex] = i as u32;
                        table.insert(nk, (g + emb.gain, nw));
                    }
                    f.iter_mut().for_each(|x| *x = FREE);
                }
                table
            }
            NiceNode::Forget { vertex, child } => {
                let prev = tables[child].take().expect("child table is consumed once");
                let at = nice.bags[child]
                    .iter()
                    .position(|&v| v == vertex)
                    .expect("forgotten vertex is in child bag");
                let mut table = Table::with_capacity(prev.len());
                for (mut key, (g, wit)) in prev {
                    key.remove(at);
                    match table.get_mut(&key) {
                        Some(cur)
                            if (cur.0, std::cmp::Reverse(&cur.1))
                                >= (g, std::cmp::Reverse(&wit)) => {}
                        Some(cur) => *cur = (g, wit),
                        None => {
                            table.insert(key, (g, wit));
                        }
                    }
                }
                table
            }
            NiceNode::Join { left, right } => {
                stats.join_nodes += 1;
                let a = tables[left].take().expect("child table is consumed once");
                let b = tables[right].take().expect("child table is consumed once");
                let mut table = Table::with_capacity(a.len().min(b.len()));
                for (key, (ga, wa)) in a {
                    let Some((gb, wb)) = b.get(&key) else {
                        continue;
                    };
                    let shared: Weight = bag
                        .iter()
                        .zip(&key)
                        .map(|(&comp, &i)| lists[comp][i as usize].gain)
                        .sum();
                    let wit: Vec<u32> = wa
                        .iter()
                        .zip(wb)
                        .map(|(&x, &y)| if x == UNSET { y } else { x })
                        .collect();
                    table.insert(key, (ga + gb - shared, wit));
                }
                table
            }
        };
        stats.largest_table = stats.largest_table.max(table.len());
        let bound: u128 = bag.iter().map(|&comp| lists[comp].len() as u128).product();
        if table.len() as u128 > bound {
            stats.table_bound_violated = true;
        }
        tables.push(Some(table));
    }
    let root = tables.pop().flatten()?;
    root.into_iter().next().map(|(_, v)| v)
}
