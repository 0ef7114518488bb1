use crate::error::{Error, Result};
use crate::graph::Node;
use crate::Scalar;

/// Sample collection the forest is grown on.
///
/// Node ids are positions `0..len()`. `ordered_ids` is empty until training
/// fills it with the heap removal order (non-decreasing cost).
#[derive(Debug, Clone, PartialEq)]
pub struct Subgraph<T> {
    pub(crate) nodes: Vec<Node<T>>,
    pub(crate) n_features: usize,
    pub(crate) n_classes: u32,
    pub(crate) ordered_ids: Vec<usize>,
}

impl<T: Scalar> Subgraph<T> {
    /// Builds an untrained subgraph from `(features, label)` rows.
    ///
    /// Labels must cover every class in `1..=max`, all rows must share one
    /// length, and every feature must be finite.
    pub fn new(rows: impl IntoIterator<Item = (Vec<T>, u32)>) -> Result<Self> {
        let nodes: Vec<Node<T>> = rows
            .into_iter()
            .enumerate()
            .map(|(id, (features, label))| Node::new(id, features, label))
            .collect();
        let first = nodes
            .first()
            .ok_or_else(|| Error::Parameter("subgraph needs at least one sample".into()))?;
        let n_features = first.features.len();
        if n_features == 0 {
            return Err(Error::Parameter("samples need at least one feature".into()));
        }
        let mut n_classes = 0;
        for node in &nodes {
            if node.features.len() != n_features {
                return Err(Error::Row {
                    row: node.id,
                    source: Box::new(Error::Shape {
                        expected: n_features,
                        found: node.features.len(),
                    }),
                });
            }
            if node.features.iter().any(|v| !v.is_finite()) {
                return Err(Error::Row {
                    row: node.id,
                    source: Box::new(Error::Domain("non-finite feature".into())),
                });
            }
            if node.true_label == 0 {
                return Err(Error::Row {
                    row: node.id,
                    source: Box::new(Error::Parameter("labels are 1-based".into())),
                });
            }
            n_classes = n_classes.max(node.true_label);
        }
        let mut seen = vec![false; n_classes as usize + 1];
        for node in &nodes {
            seen[node.true_label as usize] = true;
        }
        if let Some(missing) = (1..=n_classes).find(|&c| !seen[c as usize]) {
            return Err(Error::MissingClass(missing));
        }
        Ok(Subgraph {
            nodes,
            n_features,
            n_classes,
            ordered_ids: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node<T> {
        &self.nodes[id]
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn n_classes(&self) -> u32 {
        self.n_classes
    }

    pub fn ordered_ids(&self) -> &[usize] {
        &self.ordered_ids
    }

    pub fn is_trained(&self) -> bool {
        !self.ordered_ids.is_empty()
    }

    pub fn features(&self, id: usize) -> &[T] {
        &self.nodes[id].features
    }

    pub fn costs(&self) -> Vec<T> {
        self.nodes.iter().map(|n| n.cost).collect()
    }

    pub fn prototypes(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .filter(|n| n.is_prototype)
            .map(|n| n.id)
            .collect()
    }

    /// Number of distinct labels actually present.
    pub fn distinct_labels(&self) -> usize {
        let mut seen = vec![false; self.n_classes as usize + 1];
        for node in &self.nodes {
            seen[node.true_label as usize] = true;
        }
        seen.iter().filter(|&&s| s).count()
    }

    /// Drops any training state, returning every node to its initial values.
    pub fn reset(&mut self) {
        for node in &mut self.nodes {
            node.cost = T::infinity();
            node.predecessor = None;
            node.conquered_label = node.true_label;
            node.is_prototype = false;
        }
        self.ordered_ids.clear();
    }
}
