use serde::{Deserialize, Serialize};

use crate::Scalar;

/// One sample of a subgraph together with its optimum-path state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Node<T> {
    pub id: usize,
    pub features: Vec<T>,
    pub true_label: u32,
    pub cost: T,
    pub predecessor: Option<usize>,
    pub conquered_label: u32,
    pub is_prototype: bool,
}

impl<T: Scalar> Node<T> {
    pub fn new(id: usize, features: Vec<T>, true_label: u32) -> Self {
        Node {
            id,
            features,
            true_label,
            cost: T::infinity(),
            predecessor: None,
            conquered_label: true_label,
            is_prototype: false,
        }
    }
}
