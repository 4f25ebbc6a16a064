//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{TourInstance, Weight};

/// Random tour plus a maximal random set of chords, so that every vertex has
/// degree at most `max_degree` (at least 2). Weights are uniform in `[lo, hi]`.
pub fn random_instance(
    seed: u64,
    n: usize,
    max_degree: usize,
    lo: Weight,
    hi: Weight,
) -> TourInstance {
    assert!(n >= 3 && max_degree >= 2 && lo <= hi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tour: Vec<usize> = (0..n).collect();
    tour.shuffle(&mut rng);
    let mut edges = Vec::new();
    let mut degree = vec![2usize; n];
    let mut adjacent = std::collections::HashSet::new();
    for i in 0..n {
        let (u, v) = (tour[i], tour[(i + 1) % n]);
        edges.push((u, v, rng.gen_range(lo..=hi)));
        adjacent.insert((u.min(v), u.max(v)));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|p| !adjacent.contains(p))
        .collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if degree[u] < max_degree && degree[v] < max_degree {
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v, rng.gen_range(lo..=hi)));
        }
    }
    TourInstance::new(n, edges, tour).expect("generated instance is well formed")
}

/// Random cubic instance: a random tour plus a random perfect matching of
/// chords. `n` must be even and at least 6.
pub fn random_cubic(seed: u64, n: usize, lo: Weight, hi: Weight) -> TourInstance {
    assert!(n >= 6 && n.is_multiple_of(2) && lo <= hi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tour: Vec<usize> = (0..n).collect();
    tour.shuffle(&mut rng);
    let mut pos = vec![0usize; n];
    for (i, &v) in tour.iter().enumerate() {
        pos[v] = i;
    }
    let on_tour = |u: usize, v: usize| {
        let d = pos[u].abs_diff(pos[v]);
        d == 1 || d == n - 1
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    // Repair pairs that would duplicate a tour edge by exchanging partners.
    loop {
        let bad: Vec<usize> = (0..n / 2)
            .filter(|&p| on_tour(order[2 * p], order[2 * p + 1]))
            .collect();
        if bad.is_empty() {
            break;
        }
        for p in bad {
            let q = rng.gen_range(0..n / 2);
            order.swap(2 * p + 1, 2 * q + 1);
        }
    }
    let mut edges: Vec<(usize, usize, Weight)> = (0..n)
        .map(|i| (tour[i], tour[(i + 1) % n], rng.gen_range(lo..=hi)))
        .collect();
    edges.extend((0..n / 2).map(|p| (order[2 * p], order[2 * p + 1], rng.gen_range(lo..=hi))));
    TourInstance::new(n, edges, tour).expect("generated instance is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_respect_degree_and_are_reproducible() {
        let a = random_instance(5, 12, 3, 1, 5);
        assert!(a.max_degree() <= 3);
        assert_eq!(a.to_text(), random_instance(5, 12, 3, 1, 5).to_text());
        let c = random_cubic(9, 100, 1, 1);
        assert!((0..100).all(|v| c.neighbors(v).len() == 3));
        assert_eq!(c.edge_count(), 150);
    }
}
