//! Supervised optimum-path forest.
//!
//! Training builds a minimum spanning tree over the complete graph of
//! training samples, takes both endpoints of every edge joining two classes
//! as prototypes, and then grows optimum-path trees from the prototypes
//! under the bottleneck path cost `max(cost(s), d(s, t))`. A new sample is
//! assigned the label of the training node offering it the cheapest such
//! path.

mod arcs;
mod model;
mod predict;
mod train;

pub use arcs::MATRIX_LIMIT;
pub use model::{load_model, save_model, FORMAT_VERSION};
pub use predict::{BatchPrediction, Prediction};
pub use train::{find_prototypes, fit, fit_with, minimum_spanning_tree, FitOptions, MstEdge, TrainedModel};
