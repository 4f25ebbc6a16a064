//! Property tests for invariants that hold across modules.

use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kopt_core::hardness::{
    gen_subiso_instance, gen_triangle_instance, restricted_oracle_9opt, subiso_witness_tour, Part,
    PatternedHost, TriangleMode, TripartiteGraph,
};
use kopt_core::patterns::Embedding;
use kopt_core::random::random_instance;
use kopt_core::rangesearch::{PrioritizedPoint, RangeTree};
use kopt_core::seqswaps::{enumerate_sequential_swaps_counted, is_sequential_swap};
use kopt_core::solvers::{
    best_move_c_sequential, best_move_dp, best_move_meet, best_move_pathwidth_dp,
    brute_force_best_move, detect_quasilinear_with_stats, local_search, DecompositionKind, Engine,
    LocalSearchOptions, DEFAULT_BUDGET,
};
use kopt_core::{apply_move, validate_swap, Move, Pattern, Swap, TourInstance, Validation};

fn instance(seed: u64, n: usize, max_weight: i64) -> TourInstance {
    random_instance(seed, n, 3, 1, max_weight)
}

/// Number of cycles of the 2-regular multigraph `(tour \ removed) ∪ added`,
/// by union-find.
fn cycles_after(inst: &TourInstance, swap: &Swap) -> usize {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let n = inst.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let join = |u: usize, v: usize, parent: &mut Vec<usize>| {
        let (a, b) = (find(parent, u), find(parent, v));
        parent[a] = b;
    };
    for i in (0..n).filter(|i| !swap.removed.contains(i)) {
        let (u, v) = inst.tour_edge(i);
        join(u, v, &mut parent);
    }
    for &(u, v) in &swap.added {
        join(u, v, &mut parent);
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// A random fixed-point-free involution on `2k` points.
fn random_matching(rng: &mut ChaCha8Rng, k: usize) -> Vec<u8> {
    let mut order: Vec<usize> = (0..2 * k).collect();
    order.shuffle(rng);
    let mut mate = vec![0u8; 2 * k];
    for pair in order.chunks(2) {
        mate[pair[0]] = pair[1] as u8;
        mate[pair[1]] = pair[0] as u8;
    }
    mate
}

fn complete_graph(n: usize) -> TourInstance {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1)));
    TourInstance::new(n, edges, (0..n).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moves_validate_and_change_weight_by_gain(seed in any::<u64>(), n in 6usize..=12, k in 2usize..=4) {
        let inst = instance(seed, n, 5);
        let before = inst.tour_weight().unwrap();
        let found: Vec<Move> = [
            brute_force_best_move(&inst, k, DEFAULT_BUDGET).unwrap(),
            best_move_c_sequential(&inst, k, 1).unwrap(),
            best_move_pathwidth_dp(&inst, k).unwrap(),
        ]
        .into_iter()
        .flatten()
        .collect();
        for m in found {
            prop_assert!(m.gain() > 0);
            prop_assert!(matches!(validate_swap(&inst, &m.swap).unwrap(), Validation::Move(_)));
            let after = apply_move(&inst, &m).unwrap();
            prop_assert_eq!(after.tour_weight().unwrap(), before - m.gain());
        }
    }

    #[test]
    fn worker_count_does_not_change_results(seed in any::<u64>(), n in 8usize..=14, k in 2usize..=5, threads in 2usize..=5) {
        let raw = instance(seed, n, 5);
        prop_assert_eq!(
            best_move_meet(&raw, k, None, 1).unwrap(),
            best_move_meet(&raw, k, None, threads).unwrap()
        );
        let (one, one_stats) = best_move_dp(&raw, k, DecompositionKind::Path, 1).unwrap();
        let (many, many_stats) = best_move_dp(&raw, k, DecompositionKind::Path, threads).unwrap();
        prop_assert_eq!(one, many);
        prop_assert_eq!(one_stats.patterns, many_stats.patterns);
        // The quasi-linear engine needs a tour without smaller improving moves.
        let mut opts = LocalSearchOptions::new(k - 1);
        opts.engine = Engine::Oracle;
        let inst = if k > 2 { local_search(&raw, &opts).unwrap().instance } else { raw };
        let (one, one_stats) = detect_quasilinear_with_stats(&inst, k, 1).unwrap();
        let (many, many_stats) = detect_quasilinear_with_stats(&inst, k, threads).unwrap();
        prop_assert_eq!(one, many);
        let counts = |s: &kopt_core::solvers::QuasiStats| (s.patterns, s.meet_patterns, s.triple_patterns, s.fallbacks);
        prop_assert_eq!(counts(&one_stats), counts(&many_stats));
    }

    #[test]
    fn validation_matches_union_find(seed in any::<u64>(), n in 5usize..=12, k in 2usize..=5) {
        let inst = instance(seed, n, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut removed: Vec<usize> = (0..n).collect();
        removed.shuffle(&mut rng);
        removed.truncate(k.min(n));
        let mut ends: Vec<usize> = removed.iter().flat_map(|&i| {
            let (u, v) = inst.tour_edge(i);
            [u, v]
        }).collect();
        ends.shuffle(&mut rng);
        let added: Vec<(usize, usize)> = ends.chunks(2).map(|p| (p[0], p[1])).collect();
        if let Ok(swap) = Swap::new(&inst, removed, added) {
            let cycles = cycles_after(&inst, &swap);
            match validate_swap(&inst, &swap).unwrap() {
                Validation::Move(m) => {
                    prop_assert_eq!(cycles, 1);
                    prop_assert_eq!(m.gain(), swap.gain);
                }
                Validation::Infeasible { cycles: c } => {
                    prop_assert!(cycles > 1);
                    prop_assert_eq!(c, cycles);
                }
            }
        }
    }

    #[test]
    fn canonical_text_is_a_fixpoint(seed in any::<u64>(), n in 3usize..=20) {
        let inst = instance(seed, n, 9);
        let text = inst.to_text();
        let again = TourInstance::parse(&text).unwrap();
        prop_assert_eq!(again.to_text(), text);
    }

    #[test]
    fn slot_exchange_is_an_involution(seed in any::<u64>(), k in 2usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Pattern::unrestricted(random_matching(&mut rng, k)).unwrap();
        let s = rng.gen_range(0..k - 1);
        prop_assert_eq!(p.swap_adjacent(s).swap_adjacent(s), p);
    }

    #[test]
    fn sequential_components_partition_the_slots(seed in any::<u64>(), k in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Pattern::unrestricted(random_matching(&mut rng, k)).unwrap();
        let mut seen = vec![false; k];
        for sub in p.sequential_decomposition() {
            prop_assert!(sub.pattern.is_sequential());
            for s in sub.slots {
                prop_assert!(!seen[s]);
                seen[s] = true;
            }
        }
        prop_assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn feasibility_matches_realized_swaps(seed in any::<u64>(), k in 2usize..=6) {
        // Slots on every third tour edge of a complete graph are pairwise
        // non-adjacent, and every added edge exists.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = complete_graph(3 * k + 3);
        let Ok(p) = Pattern::new(random_matching(&mut rng, k)) else { return Ok(()) };
        let offset = rng.gen_range(0..3);
        let f = Embedding::new((0..k).map(|s| 3 * s + offset).collect()).unwrap();
        let swap = p.realize(&f, &inst).unwrap();
        let is_move = matches!(validate_swap(&inst, &swap).unwrap(), Validation::Move(_));
        prop_assert_eq!(p.is_feasible(), is_move);
    }

    #[test]
    fn sequential_swaps_are_distinct_bounded_walks(seed in any::<u64>(), n in 6usize..=12, l in 2usize..=4) {
        let inst = instance(seed, n, 5);
        let d = inst.max_degree() as u64;
        let (swaps, walks) = enumerate_sequential_swaps_counted(&inst, l);
        let bound = n as u64 * (2 * d.saturating_sub(2)).pow(l as u32 - 1);
        prop_assert!(swaps.len() as u64 <= walks && walks <= bound);
        let distinct: HashSet<_> = swaps.iter().map(|s| (s.removed.clone(), s.added.clone())).collect();
        prop_assert_eq!(distinct.len(), swaps.len());
        for s in &swaps {
            prop_assert_eq!(s.k(), l);
            prop_assert!(is_sequential_swap(&inst, s));
        }
    }

    #[test]
    fn range_query_answers_are_maximal_and_inside(seed in any::<u64>(), count in 1usize..=60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points: Vec<PrioritizedPoint> = (0..count)
            .map(|i| PrioritizedPoint::new(vec![rng.gen_range(0..10), rng.gen_range(0..10)], rng.gen_range(0..5), i))
            .collect();
        let tree = RangeTree::build_excluding(points.clone(), 2, 0).unwrap();
        let (a, b) = (rng.gen_range(0..10), rng.gen_range(0..10));
        let bx = [(a.min(b), a.max(b)), (0, rng.gen_range(0..10))];
        let forbidden = [rng.gen_range(0..10)];
        let best_scan = points
            .iter()
            .filter(|p| p.in_box(&bx) && p.coords[0] != forbidden[0])
            .map(|p| p.priority)
            .max();
        let got = tree.query_max_excluding(&bx, 0, &forbidden).unwrap();
        prop_assert_eq!(got.map(|p| p.priority), best_scan);
        if let Some(p) = got {
            prop_assert!(p.in_box(&bx) && p.coords[0] != forbidden[0]);
        }
    }

    #[test]
    fn triangle_reduction_detects_triangles(mask in 1u32..(1 << 27)) {
        // Three vertices per part: 0-2 in A, 3-5 in B, 6-8 in C.
        let part: Vec<Part> = (0..9).map(|v| [Part::A, Part::B, Part::C][v / 3]).collect();
        let slots: Vec<(usize, usize)> = (0..9)
            .flat_map(|u| (u + 1..9).map(move |v| (u, v)))
            .filter(|&(u, v)| u / 3 != v / 3)
            .collect();
        let edges: Vec<(usize, usize)> = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let has = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
        let triangle = (0..3).any(|a| (3..6).any(|b| (6..9).any(|c| has(a, b) && has(b, c) && has(c, a))));
        let g = TripartiteGraph::new(part, edges.clone()).unwrap();
        let r = gen_triangle_instance(&g, &TriangleMode::Unit).unwrap();
        prop_assert!(r.instance.max_degree() <= 3);
        prop_assert!(r.instance.n() <= 9 * edges.len() + 9);
        let found = restricted_oracle_9opt(&r.instance, &r.catalogue).unwrap();
        prop_assert_eq!(found.is_some(), triangle);
    }

    #[test]
    fn subiso_reduction_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut class = Vec::new();
        for i in 0..3 {
            class.extend(std::iter::repeat_n(i, rng.gen_range(1..=3)));
        }
        let n = class.len();
        let host_edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| class[u] != class[v])
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let raw = PatternedHost { host_n: n, host_edges, pattern_n: 3, pattern_edges: vec![(0, 1), (1, 2), (2, 0)], class };
        let (ph, _) = raw.pruned();
        if ph.validate().is_err() {
            return Ok(());
        }
        let r = gen_subiso_instance(&ph).unwrap();
        let inst = &r.instance;
        prop_assert!(inst.max_degree() <= 3);
        prop_assert!(inst.edges().iter().all(|&(_, _, w)| w == 1 || w == 2));
        prop_assert_eq!(inst.tour_weight().unwrap(), r.beta);
        let start: HashSet<(usize, usize)> = (0..inst.n()).map(|i| {
            let (a, b) = inst.tour_edge(i);
            (a.min(b), a.max(b))
        }).collect();
        let has = |u: usize, v: usize| ph.host_edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
        for a in (0..ph.host_n).filter(|&u| ph.class[u] == 0) {
            for b in (0..ph.host_n).filter(|&u| ph.class[u] == 1) {
                for c in (0..ph.host_n).filter(|&u| ph.class[u] == 2) {
                    if !(has(a, b) && has(b, c) && has(c, a)) {
                        continue;
                    }
                    let better = inst.with_tour(subiso_witness_tour(&ph, &[a, b, c]).unwrap()).unwrap();
                    prop_assert_eq!(better.tour_weight().unwrap(), r.beta - 1);
                    let dropped = (0..better.n()).filter(|&i| {
                        let (u, v) = better.tour_edge(i);
                        !start.contains(&(u.min(v), u.max(v)))
                    }).count();
                    prop_assert!(dropped <= r.k_prime);
                }
            }
        }
    }
}
