use crate::distance::{pairwise_matrix, Kernel, PairwiseMatrix};
use crate::error::{Error, Result};
use crate::graph::Subgraph;
use crate::Scalar;

/// Largest training set for which a precomputed distance matrix may be used.
pub const MATRIX_LIMIT: usize = 5_000;

/// Arc weights of the complete training graph.
pub(crate) enum Arcs<'a, T> {
    OnTheFly { kernel: Kernel<T>, graph: &'a Subgraph<T> },
    Matrix(PairwiseMatrix<T>),
}

impl<'a, T: Scalar> Arcs<'a, T> {
    pub(crate) fn new(graph: &'a Subgraph<T>, kernel: Kernel<T>, precompute: bool) -> Result<Self> {
        if precompute && graph.len() < MATRIX_LIMIT {
            let rows: Vec<&[T]> = graph.nodes().iter().map(|n| n.features.as_slice()).collect();
            Ok(Arcs::Matrix(pairwise_matrix(&kernel, &rows)?))
        } else {
            Ok(Arcs::OnTheFly { kernel, graph })
        }
    }

    #[inline]
    pub(crate) fn weight(&self, s: usize, t: usize) -> Result<T> {
        match self {
            Arcs::OnTheFly { kernel, graph } => kernel
                .evaluate_finite(graph.features(s), graph.features(t))
                .map_err(|e| Error::Pairwise {
                    row: s,
                    col: t,
                    source: Box::new(e),
                }),
            Arcs::Matrix(m) => Ok(m.get(s, t)),
        }
    }
}
