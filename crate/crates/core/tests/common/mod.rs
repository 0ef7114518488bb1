//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. They favour obviousness over speed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use opf_core::distance::Kernel;
use opf_core::stream::rng;
use opf_core::{DistanceId, DomainMode, KernelBackend, TrainedModel};
use rand::Rng;
use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    rng(seed)
}

pub fn uniform_rows(rng: &mut impl Rng, n: usize, dim: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| rng.random_range(lo..hi)).collect())
        .collect()
}

/// Labels in `1..=classes`, each class present at least once.
pub fn labels(rng: &mut impl Rng, n: usize, classes: u32) -> Vec<u32> {
    assert!(n >= classes as usize);
    (0..n)
        .map(|i| if i < classes as usize { i as u32 + 1 } else { rng.random_range(1..=classes) })
        .collect()
}

/// Arc weights of the complete graph, evaluated pair by pair.
pub fn weights(rows: &[Vec<f64>], id: DistanceId, backend: KernelBackend) -> Vec<Vec<f64>> {
    let kernel = Kernel::new(id, backend, DomainMode::Lenient);
    rows.iter()
        .map(|a| rows.iter().map(|b| kernel.evaluate(a, b).unwrap()).collect())
        .collect()
}

/// Minimax path values between every pair: the smallest achievable largest
/// arc over all paths (Floyd–Warshall over the (min, max) semiring).
pub fn bottleneck_closure(w: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = w.len();
    let mut b: Vec<Vec<f64>> = w.to_vec();
    for (i, row) in b.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = b[i][k].max(b[k][j]);
                if via < b[i][j] {
                    b[i][j] = via;
                }
            }
        }
    }
    b
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Edges of a minimum spanning tree by Kruskal's method (unique when all
/// weights differ).
pub fn kruskal(w: &[Vec<f64>]) -> Vec<(usize, usize, f64)> {
    let n = w.len();
    let mut edges: Vec<(usize, usize, f64)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, w[i][j]))
        .collect();
    edges.sort_by(|a, b| a.2.total_cmp(&b.2));
    let mut uf = UnionFind::new(n);
    edges.into_iter().filter(|&(i, j, _)| uf.union(i, j)).collect()
}

pub fn class_crossing_endpoints(tree: &[(usize, usize, f64)], labels: &[u32]) -> BTreeSet<usize> {
    tree.iter()
        .filter(|&&(i, j, _)| labels[i] != labels[j])
        .flat_map(|&(i, j, _)| [i, j])
        .collect()
}

/// Weight of the lightest spanning tree, found by trying every set of
/// `n - 1` edges.
pub fn exhaustive_mst_weight(w: &[Vec<f64>]) -> f64 {
    let n = w.len();
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(n - 1);
    fn search(
        start: usize,
        edges: &[(usize, usize)],
        need: usize,
        chosen: &mut Vec<usize>,
        w: &[Vec<f64>],
        best: &mut f64,
    ) {
        if chosen.len() == need {
            let mut uf = UnionFind::new(need + 1);
            if chosen.iter().all(|&e| uf.union(edges[e].0, edges[e].1)) {
                let total: f64 = chosen.iter().map(|&e| w[edges[e].0][edges[e].1]).sum();
                *best = best.min(total);
            }
            return;
        }
        for e in start..edges.len() {
            if edges.len() - e < need - chosen.len() {
                break;
            }
            chosen.push(e);
            search(e + 1, edges, need, chosen, w, best);
            chosen.pop();
        }
    }
    search(0, &edges, n - 1, &mut chosen, w, &mut best);
    best
}

/// Optimal costs from the closure: 0 at prototypes, otherwise the cheapest
/// minimax value from any prototype. Also returns, per node, the labels of
/// every prototype achieving it.
pub fn optimal_costs(b: &[Vec<f64>], prototypes: &BTreeSet<usize>, labels: &[u32]) -> Vec<(f64, BTreeSet<u32>)> {
    (0..b.len())
        .map(|s| {
            let best = prototypes.iter().map(|&p| b[p][s]).fold(f64::INFINITY, f64::min);
            let winners = prototypes
                .iter()
                .filter(|&&p| b[p][s] == best)
                .map(|&p| labels[p])
                .collect();
            (best, winners)
        })
        .collect()
}

/// Classification by visiting every training node in order, no early stop.
pub fn scan_all(model: &TrainedModel, sample: &[f64]) -> (u32, f64, usize) {
    let graph = model.subgraph();
    let mut best = (0u32, f64::INFINITY, usize::MAX);
    for &k in graph.ordered_ids() {
        let node = graph.node(k);
        let offer = node.cost.max(model.kernel().evaluate(&node.features, sample).unwrap());
        if offer < best.1 {
            best = (node.conquered_label, offer, k);
        }
    }
    best
}

/// Wilcoxon signed-rank by enumerating all `2^n` sign patterns over the
/// average ranks. `None` when fewer than 5 non-zero differences remain.
pub fn wilcoxon_brute(a: &[f64], b: &[f64]) -> Option<(f64, f64)> {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|&d| d != 0.0).collect();
    let n = d.len();
    if n < 5 {
        return None;
    }
    let ranks: Vec<f64> = d
        .iter()
        .map(|x| {
            let below = d.iter().filter(|y| y.abs() < x.abs()).count() as f64;
            let equal = d.iter().filter(|y| y.abs() == x.abs()).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let plus: f64 = d.iter().zip(&ranks).filter(|(x, _)| **x > 0.0).map(|(_, r)| r).sum();
    let total: f64 = ranks.iter().sum();
    let w = plus.min(total - plus);
    let mut at_most = 0u64;
    for mask in 0u64..(1 << n) {
        let s: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        if s <= w + 1e-9 {
            at_most += 1;
        }
    }
    let p = (2.0 * at_most as f64 / (1u64 << n) as f64).min(1.0);
    Some((w, p))
}

/// `|a - b| <= rel * max(|a|, |b|)`, with an absolute floor for values near 0.
pub fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    a == b || (a - b).abs() <= (rel * a.abs().max(b.abs())).max(abs)
}

/// Inputs inside a measure's domain, bounded away from the guard thresholds.
pub fn domain_vector(rng: &mut impl Rng, id: DistanceId, len: usize) -> Vec<f64> {
    use opf_core::distance::InputDomain;
    let (lo, hi) = match id.spec().input_domain {
        InputDomain::Real => (-1.0, 1.0),
        InputDomain::NonNegative => (0.0, 1.0),
        InputDomain::Positive => (0.01, 1.0),
    };
    (0..len).map(|_| rng.random_range(lo..hi)).collect()
}
