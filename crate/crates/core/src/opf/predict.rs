use std::time::Instant;

use rayon::prelude::*;

use super::TrainedModel;
use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction<T> {
    pub label: u32,
    /// Cost of the cheapest path offered to the sample.
    pub cost: T,
    /// Training node offering that path.
    pub conqueror: usize,
}

#[derive(Debug, Clone)]
pub struct BatchPrediction<T> {
    pub predictions: Vec<Prediction<T>>,
    pub seconds: f64,
}

impl<T> BatchPrediction<T> {
    pub fn labels(&self) -> Vec<u32> {
        self.predictions.iter().map(|p| p.label).collect()
    }
}

impl<T: Scalar> TrainedModel<T> {
    /// Classifies one sample.
    ///
    /// Training nodes are visited in non-decreasing cost order and the scan
    /// stops at the first node whose own cost already reaches the best offer,
    /// since every later offer is at least that node's cost. On equal offers
    /// the node reached first wins.
    pub fn predict(&self, sample: &[T]) -> Result<Prediction<T>> {
        let graph = &self.subgraph;
        if sample.len() != graph.n_features() {
            return Err(Error::Shape {
                expected: graph.n_features(),
                found: sample.len(),
            });
        }
        if sample.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite input component".into()));
        }
        let mut best = T::infinity();
        let mut conqueror = None;
        for &k in graph.ordered_ids() {
            let node = graph.node(k);
            if node.cost >= best {
                break;
            }
            let offer = node.cost.max(self.kernel.evaluate_finite(&node.features, sample)?);
            if offer < best {
                best = offer;
                conqueror = Some(k);
            }
        }
        let conqueror = conqueror.ok_or_else(|| Error::Parameter("model has no trained nodes".into()))?;
        Ok(Prediction {
            label: graph.node(conqueror).conquered_label,
            cost: best,
            conqueror,
        })
    }

    /// Classifies every row, in parallel unless `serial` is set. Results
    /// keep row order; the first failing row (by index) aborts the batch.
    pub fn predict_batch<R: AsRef<[T]> + Sync>(&self, samples: &[R], serial: bool) -> Result<BatchPrediction<T>> {
        let start = Instant::now();
        let results: Vec<Result<Prediction<T>>> = if serial {
            samples.iter().map(|s| self.predict(s.as_ref())).collect()
        } else {
            samples.par_iter().map(|s| self.predict(s.as_ref())).collect()
        };
        let seconds = start.elapsed().as_secs_f64();
        let predictions = results
            .into_iter()
            .enumerate()
            .map(|(row, r)| r.map_err(|e| Error::Row { row, source: Box::new(e) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(BatchPrediction { predictions, seconds })
    }
}
