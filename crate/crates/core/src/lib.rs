//! Supervised optimum-path forest (OPF) classification.
//!
//! The crate is organized the way a training run flows:
//!
//! * [`stream`] loads datasets (text, CSV, JSON, binary `.opf`), splits them
//!   and converts between formats.
//! * [`graph`] holds the sample graph and the addressable cost heap.
//! * [`distance`] is the registry of 47 distance measures, each with a
//!   reference and an optimized kernel.
//! * [`opf`] trains the forest (minimum-spanning-tree prototypes, then
//!   bottleneck-cost propagation) and classifies new samples.
//! * [`bench`] runs repeated split/train/predict timing plans and compares
//!   the two kernel backends with a Wilcoxon signed-rank test.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which is what the file formats and the CLI
//! use.

pub mod bench;
pub mod distance;
pub mod error;
pub mod graph;
pub mod opf;
mod scalar;
pub mod stream;

pub use distance::{evaluate, DistanceId, DomainMode, KernelBackend};
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Node = graph::Node<f64>;
pub type Subgraph = graph::Subgraph<f64>;
pub type Kernel = distance::Kernel<f64>;
pub type TrainedModel = opf::TrainedModel<f64>;
pub type Prediction = opf::Prediction<f64>;

pub type Subgraph32 = graph::Subgraph<f32>;
pub type Kernel32 = distance::Kernel<f32>;
pub type TrainedModel32 = opf::TrainedModel<f32>;
