mod common;

use common::{
    bottleneck_closure, class_crossing_endpoints, exhaustive_mst_weight, kruskal, labels, optimal_costs, scan_all,
    seeded, uniform_rows, weights,
};
use opf_core::opf::{find_prototypes, fit, fit_with, minimum_spanning_tree, FitOptions};
use opf_core::{DistanceId, KernelBackend, Subgraph, Subgraph32, TrainedModel};
use proptest::prelude::*;
use rand::Rng;

fn graph(rows: &[Vec<f64>], labels: &[u32]) -> Subgraph {
    Subgraph::new(rows.iter().cloned().zip(labels.iter().copied())).unwrap()
}

fn instance(seed: u64, max_n: usize, classes: u32, dim: usize) -> (Vec<Vec<f64>>, Vec<u32>) {
    let mut rng = seeded(seed);
    let n = rng.random_range((classes as usize).max(2)..=max_n);
    (uniform_rows(&mut rng, n, dim, 0.0, 1.0), labels(&mut rng, n, classes))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn costs_match_bottleneck_closure(seed in any::<u64>(), backend in prop_oneof![Just(KernelBackend::Reference), Just(KernelBackend::Optimized)]) {
        let (rows, labels) = instance(seed, 20, 3, 4);
        let w = weights(&rows, DistanceId::Euclidean, backend);
        let model = fit(graph(&rows, &labels), DistanceId::Euclidean, backend).unwrap();
        let oracle_prototypes = class_crossing_endpoints(&kruskal(&w), &labels);
        let found: std::collections::BTreeSet<usize> = model.subgraph().prototypes().into_iter().collect();
        prop_assert_eq!(&found, &oracle_prototypes);
        let expected = optimal_costs(&bottleneck_closure(&w), &oracle_prototypes, &labels);
        for (node, (cost, winners)) in model.subgraph().nodes().iter().zip(&expected) {
            prop_assert_eq!(node.cost, *cost);
            prop_assert!(winners.contains(&node.conquered_label));
        }
    }

    #[test]
    fn mst_is_minimal(seed in any::<u64>()) {
        let (rows, labels) = instance(seed, 7, 2, 3);
        let w = weights(&rows, DistanceId::Manhattan, KernelBackend::Reference);
        let tree = minimum_spanning_tree(&graph(&rows, &labels), DistanceId::Manhattan, KernelBackend::Reference).unwrap();
        prop_assert_eq!(tree.len(), rows.len() - 1);
        let total: f64 = tree.iter().map(|e| e.weight).sum();
        prop_assert!((total - exhaustive_mst_weight(&w)).abs() <= 1e-12);
    }

    #[test]
    fn early_stop_matches_full_scan(seed in any::<u64>()) {
        let (rows, labels) = instance(seed, 60, 3, 5);
        let model = fit(graph(&rows, &labels), DistanceId::Euclidean, KernelBackend::Optimized).unwrap();
        let mut rng = seeded(seed ^ 0xABCD);
        for q in uniform_rows(&mut rng, 10, 5, -0.2, 1.2) {
            let p = model.predict(&q).unwrap();
            prop_assert_eq!((p.label, p.cost, p.conqueror), scan_all(&model, &q));
        }
    }
}

#[test]
fn paths_are_consistent() {
    for seed in 0..50 {
        let (rows, labels) = instance(seed, 40, 4, 3);
        let w = weights(&rows, DistanceId::Canberra, KernelBackend::Optimized);
        let model = fit(graph(&rows, &labels), DistanceId::Canberra, KernelBackend::Optimized).unwrap();
        let g = model.subgraph();
        let mut seen = vec![false; g.len()];
        for (i, &id) in g.ordered_ids().iter().enumerate() {
            assert!(!std::mem::replace(&mut seen[id], true));
            if i > 0 {
                assert!(g.node(g.ordered_ids()[i - 1]).cost <= g.node(id).cost);
            }
        }
        for node in g.nodes() {
            match node.predecessor {
                None => {
                    assert!(node.is_prototype && node.cost == 0.0);
                    assert_eq!(node.conquered_label, node.true_label);
                }
                Some(p) => {
                    let parent = g.node(p);
                    assert_eq!(node.cost, parent.cost.max(w[p][node.id]));
                    assert_eq!(node.conquered_label, parent.conquered_label);
                }
            }
        }
        // every prototype predicts its own class on its own features
        for p in g.prototypes() {
            assert_eq!(model.predict(g.features(p)).unwrap().label, labels[p]);
        }
    }
}

#[test]
fn training_is_deterministic_and_precompute_is_transparent() {
    let (rows, labels) = instance(9, 80, 3, 6);
    let a = fit(graph(&rows, &labels), DistanceId::BrayCurtis, KernelBackend::Optimized).unwrap();
    let b = fit(graph(&rows, &labels), DistanceId::BrayCurtis, KernelBackend::Optimized).unwrap();
    let options = FitOptions {
        precompute: true,
        ..FitOptions::default()
    };
    let c = fit_with(graph(&rows, &labels), DistanceId::BrayCurtis, KernelBackend::Optimized, options).unwrap();
    assert_eq!(a.subgraph(), b.subgraph());
    assert_eq!(a.subgraph(), c.subgraph());
    assert_eq!(a.to_bytes(), b.to_bytes());
}

#[test]
fn parallel_batch_equals_serial() {
    let (rows, labels) = instance(4, 100, 3, 8);
    let model: TrainedModel = fit(graph(&rows, &labels), DistanceId::Euclidean, KernelBackend::Optimized).unwrap();
    let queries = uniform_rows(&mut seeded(1), 500, 8, 0.0, 1.0);
    let parallel = model.predict_batch(&queries, false).unwrap();
    let serial = model.predict_batch(&queries, true).unwrap();
    assert_eq!(parallel.predictions, serial.predictions);
    let mut bad = queries.clone();
    bad[7] = vec![0.0; 3];
    bad[300] = vec![0.0; 3];
    match model.predict_batch(&bad, false) {
        Err(opf_core::Error::Row { row, .. }) => assert_eq!(row, 7),
        other => panic!("expected a row error, got {other:?}"),
    }
}

#[test]
fn single_precision_training() {
    let (rows, labels) = instance(2, 50, 2, 4);
    let g32 = Subgraph32::new(rows.iter().map(|r| r.iter().map(|&v| v as f32).collect::<Vec<_>>()).zip(labels.iter().copied()))
        .unwrap();
    let m32 = fit(g32, DistanceId::Euclidean, KernelBackend::Optimized).unwrap();
    let m64 = fit(graph(&rows, &labels), DistanceId::Euclidean, KernelBackend::Optimized).unwrap();
    let agree = rows
        .iter()
        .filter(|r| {
            let q32: Vec<f32> = r.iter().map(|&v| v as f32).collect();
            m32.predict(&q32).unwrap().label == m64.predict(r).unwrap().label
        })
        .count();
    assert_eq!(agree, rows.len());
}

#[test]
fn prototypes_need_two_classes() {
    let rows = vec![vec![0.0], vec![1.0]];
    assert!(find_prototypes(&graph(&rows, &[1, 1]), DistanceId::Euclidean, KernelBackend::Reference).is_err());
    let p = find_prototypes(&graph(&rows, &[1, 2]), DistanceId::Euclidean, KernelBackend::Reference).unwrap();
    assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![0, 1]);
}
