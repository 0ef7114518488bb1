use std::collections::BTreeSet;
use std::time::Instant;

use super::arcs::Arcs;
use super::model::FORMAT_VERSION;
use crate::distance::{DistanceId, DomainMode, Kernel, KernelBackend};
use crate::error::{Error, Result};
use crate::graph::{Color, CostHeap, Subgraph};
use crate::Scalar;

#[derive(Debug, Clone, Copy, Default)]
pub struct FitOptions {
    pub mode: DomainMode,
    /// Precompute the full distance matrix. Only honored below
    /// [`MATRIX_LIMIT`](super::MATRIX_LIMIT) samples.
    pub precompute: bool,
}

/// A trained forest.
#[derive(Debug, Clone)]
pub struct TrainedModel<T> {
    pub(crate) subgraph: Subgraph<T>,
    pub(crate) kernel: Kernel<T>,
    pub(crate) format_version: u32,
    pub(crate) train_seconds: f64,
}

impl<T: Scalar> TrainedModel<T> {
    pub fn subgraph(&self) -> &Subgraph<T> {
        &self.subgraph
    }

    pub fn distance(&self) -> DistanceId {
        self.kernel.id()
    }

    pub fn backend(&self) -> KernelBackend {
        self.kernel.backend()
    }

    pub fn kernel(&self) -> &Kernel<T> {
        &self.kernel
    }

    pub fn format_version(&self) -> u32 {
        self.format_version
    }

    /// Wall-clock seconds spent in [`fit`]; zero for a loaded model.
    pub fn train_seconds(&self) -> f64 {
        self.train_seconds
    }

    pub fn n_features(&self) -> usize {
        self.subgraph.n_features()
    }

    /// Rebinds the model to another domain mode for prediction.
    pub fn with_mode(mut self, mode: DomainMode) -> Self {
        self.kernel = Kernel::new(self.kernel.id(), self.kernel.backend(), mode);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MstEdge<T> {
    pub from: usize,
    pub to: usize,
    pub weight: T,
}

fn check_trainable<T: Scalar>(graph: &Subgraph<T>) -> Result<()> {
    if graph.len() < 2 {
        return Err(Error::DegenerateTraining(format!(
            "need at least 2 samples, got {}",
            graph.len()
        )));
    }
    if graph.distinct_labels() < 2 {
        return Err(Error::DegenerateTraining("all samples share one class".into()));
    }
    Ok(())
}

pub(crate) fn prim<T: Scalar>(n: usize, arcs: &Arcs<'_, T>) -> Result<Vec<MstEdge<T>>> {
    let mut in_tree = vec![false; n];
    let mut best = vec![T::infinity(); n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut current = 0;
    in_tree[0] = true;
    for _ in 1..n {
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let w = arcs.weight(current, v)?;
            if w < best[v] {
                best[v] = w;
                parent[v] = current;
            }
        }
        let mut next = usize::MAX;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || best[v] < best[next]) {
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push(MstEdge {
            from: parent[next],
            to: next,
            weight: best[next],
        });
        current = next;
    }
    Ok(edges)
}

/// Minimum spanning tree of the complete graph over `graph`, grown by Prim's
/// method from node 0. Ties go to the smaller node id.
pub fn minimum_spanning_tree<T: Scalar>(
    graph: &Subgraph<T>,
    distance: DistanceId,
    backend: KernelBackend,
) -> Result<Vec<MstEdge<T>>> {
    let arcs = Arcs::new(graph, Kernel::new(distance, backend, DomainMode::Lenient), false)?;
    prim(graph.len(), &arcs)
}

fn prototypes_from<T: Scalar>(graph: &Subgraph<T>, arcs: &Arcs<'_, T>) -> Result<BTreeSet<usize>> {
    check_trainable(graph)?;
    let mut prototypes = BTreeSet::new();
    for edge in prim(graph.len(), arcs)? {
        if graph.node(edge.from).true_label != graph.node(edge.to).true_label {
            prototypes.insert(edge.from);
            prototypes.insert(edge.to);
        }
    }
    Ok(prototypes)
}

/// Both endpoints of every class-crossing edge of the minimum spanning tree.
pub fn find_prototypes<T: Scalar>(
    graph: &Subgraph<T>,
    distance: DistanceId,
    backend: KernelBackend,
) -> Result<BTreeSet<usize>> {
    let arcs = Arcs::new(graph, Kernel::new(distance, backend, DomainMode::Lenient), false)?;
    prototypes_from(graph, &arcs)
}

struct Forest<T> {
    cost: Vec<T>,
    label: Vec<u32>,
    predecessor: Vec<Option<usize>>,
    order: Vec<usize>,
}

fn propagate<T: Scalar>(graph: &Subgraph<T>, arcs: &Arcs<'_, T>, prototypes: &BTreeSet<usize>) -> Result<Forest<T>> {
    let n = graph.len();
    let mut cost = vec![T::infinity(); n];
    let mut label: Vec<u32> = graph.nodes().iter().map(|node| node.true_label).collect();
    let mut predecessor = vec![None; n];
    for &p in prototypes {
        cost[p] = T::zero();
    }
    let mut heap = CostHeap::new(n, T::infinity());
    for (id, &c) in cost.iter().enumerate() {
        heap.insert(id, c)?;
    }
    let mut order = Vec::with_capacity(n);
    while !heap.is_empty() {
        let (s, cost_s) = heap.pop_min()?;
        order.push(s);
        for t in 0..n {
            // max(cost_s, ·) can never undercut a cost that is already <= cost_s
            if heap.color(t) != Color::InHeap || cost_s >= cost[t] {
                continue;
            }
            let candidate = cost_s.max(arcs.weight(s, t)?);
            if candidate < cost[t] {
                cost[t] = candidate;
                label[t] = label[s];
                predecessor[t] = Some(s);
                heap.decrease_key(t, candidate)?;
            }
        }
    }
    Ok(Forest {
        cost,
        label,
        predecessor,
        order,
    })
}

/// Trains a forest in lenient mode with on-the-fly distances.
pub fn fit<T: Scalar>(train: Subgraph<T>, distance: DistanceId, backend: KernelBackend) -> Result<TrainedModel<T>> {
    fit_with(train, distance, backend, FitOptions::default())
}

pub fn fit_with<T: Scalar>(
    mut train: Subgraph<T>,
    distance: DistanceId,
    backend: KernelBackend,
    options: FitOptions,
) -> Result<TrainedModel<T>> {
    train.reset();
    let kernel = Kernel::new(distance, backend, options.mode);
    let start = Instant::now();
    let forest = {
        let arcs = Arcs::new(&train, kernel, options.precompute)?;
        let prototypes = prototypes_from(&train, &arcs)?;
        let forest = propagate(&train, &arcs, &prototypes)?;
        for &p in &prototypes {
            train.nodes[p].is_prototype = true;
        }
        forest
    };
    let train_seconds = start.elapsed().as_secs_f64();
    for (id, node) in train.nodes.iter_mut().enumerate() {
        node.cost = forest.cost[id];
        node.conquered_label = forest.label[id];
        node.predecessor = forest.predecessor[id];
    }
    train.ordered_ids = forest.order;
    log::debug!(
        "trained {} nodes with {} in {:.4}s",
        train.len(),
        distance,
        train_seconds
    );
    Ok(TrainedModel {
        subgraph: train,
        kernel,
        format_version: FORMAT_VERSION,
        train_seconds,
    })
}
