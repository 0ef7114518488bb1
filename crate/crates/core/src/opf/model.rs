//! JSON model files.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "scalar": "f64",
//!   "distance": "euclidean",
//!   "backend": "optimized",
//!   "n_features": 2,
//!   "n_classes": 2,
//!   "n_nodes": 4,
//!   "nodes": [
//!     { "id": 0, "true_label": 1, "conquered_label": 1, "cost": 1.0,
//!       "predecessor": 1, "is_prototype": false, "features": [0.0, 0.5] }
//!   ],
//!   "ordered_ids": [1, 2, 0, 3]
//! }
//! ```
//!
//! Costs and features are written with the shortest decimal that parses
//! back to the same value, so a load/save cycle is byte-identical.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::TrainedModel;
use crate::distance::{DistanceId, DomainMode, Kernel, KernelBackend};
use crate::error::{Error, Result};
use crate::graph::{Node, Subgraph};
use crate::Scalar;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct ModelFile<T> {
    format_version: u32,
    scalar: String,
    distance: String,
    backend: KernelBackend,
    n_features: usize,
    n_classes: u32,
    n_nodes: usize,
    nodes: Vec<NodeRecord<T>>,
    ordered_ids: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
struct NodeRecord<T> {
    id: usize,
    true_label: u32,
    conquered_label: u32,
    cost: T,
    predecessor: Option<usize>,
    is_prototype: bool,
    features: Vec<T>,
}

#[derive(Deserialize)]
struct Header {
    format_version: serde_json::Value,
    #[serde(default)]
    scalar: Option<String>,
}

pub fn save_model<T: Scalar, W: Write>(model: &TrainedModel<T>, mut sink: W) -> Result<()> {
    let graph = &model.subgraph;
    let file = ModelFile {
        format_version: model.format_version,
        scalar: T::NAME.to_string(),
        distance: model.distance().name().to_string(),
        backend: model.backend(),
        n_features: graph.n_features(),
        n_classes: graph.n_classes(),
        n_nodes: graph.len(),
        nodes: graph
            .nodes()
            .iter()
            .map(|n| NodeRecord {
                id: n.id,
                true_label: n.true_label,
                conquered_label: n.conquered_label,
                cost: n.cost,
                predecessor: n.predecessor,
                is_prototype: n.is_prototype,
                features: n.features.clone(),
            })
            .collect(),
        ordered_ids: graph.ordered_ids().to_vec(),
    };
    serde_json::to_writer_pretty(&mut sink, &file).map_err(std::io::Error::from)?;
    sink.write_all(b"\n")?;
    Ok(())
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
}

pub fn load_model<T: Scalar, R: Read>(mut source: R) -> Result<TrainedModel<T>> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let header: Header = serde_json::from_str(&text).map_err(json_error)?;
    if header.format_version.as_u64() != Some(FORMAT_VERSION as u64) {
        return Err(Error::Version {
            found: header.format_version.to_string(),
            supported: FORMAT_VERSION.to_string(),
        });
    }
    if let Some(scalar) = header.scalar.as_deref() {
        if scalar != T::NAME {
            return Err(Error::parse(
                "scalar",
                format!("model stores {scalar} values but {} was requested", T::NAME),
            ));
        }
    }
    let file: ModelFile<T> = serde_json::from_str(&text).map_err(json_error)?;
    build(file)
}

fn build<T: Scalar>(file: ModelFile<T>) -> Result<TrainedModel<T>> {
    let distance: DistanceId = file
        .distance
        .parse()
        .map_err(|e: Error| Error::parse("distance", e.to_string()))?;
    let n = file.nodes.len();
    if file.n_nodes != n {
        return Err(Error::parse(
            "n_nodes",
            format!("declares {} nodes but {} are present", file.n_nodes, n),
        ));
    }
    if n == 0 || file.n_features == 0 || file.n_classes == 0 {
        return Err(Error::parse("n_nodes", "model is empty"));
    }
    let mut seen_class = vec![false; file.n_classes as usize + 1];
    let mut nodes = Vec::with_capacity(n);
    for (i, rec) in file.nodes.into_iter().enumerate() {
        let at = |field: &str| format!("nodes[{i}].{field}");
        if rec.id != i {
            return Err(Error::parse(at("id"), format!("expected {i}, found {}", rec.id)));
        }
        if rec.features.len() != file.n_features {
            return Err(Error::parse(
                at("features"),
                format!("expected {} values, found {}", file.n_features, rec.features.len()),
            ));
        }
        if rec.features.iter().any(|v| !v.is_finite()) {
            return Err(Error::parse(at("features"), "non-finite feature"));
        }
        for (field, label) in [("true_label", rec.true_label), ("conquered_label", rec.conquered_label)] {
            if label == 0 || label > file.n_classes {
                return Err(Error::parse(at(field), format!("label {label} outside 1..={}", file.n_classes)));
            }
        }
        seen_class[rec.true_label as usize] = true;
        if !rec.cost.is_finite() || rec.cost < T::zero() {
            return Err(Error::parse(at("cost"), format!("invalid cost {}", rec.cost)));
        }
        match rec.predecessor {
            Some(p) if p >= n => {
                return Err(Error::parse(at("predecessor"), format!("{p} is not a node id")));
            }
            Some(_) if rec.is_prototype => {
                return Err(Error::parse(at("predecessor"), "prototypes have no predecessor"));
            }
            _ => {}
        }
        nodes.push(Node {
            id: i,
            features: rec.features,
            true_label: rec.true_label,
            cost: rec.cost,
            predecessor: rec.predecessor,
            conquered_label: rec.conquered_label,
            is_prototype: rec.is_prototype,
        });
    }
    if let Some(missing) = (1..=file.n_classes).find(|&c| !seen_class[c as usize]) {
        return Err(Error::MissingClass(missing));
    }
    let mut placed = vec![false; n];
    if file.ordered_ids.len() != n {
        return Err(Error::parse("ordered_ids", format!("expected {n} ids, found {}", file.ordered_ids.len())));
    }
    for (pos, &id) in file.ordered_ids.iter().enumerate() {
        if id >= n || std::mem::replace(&mut placed[id], true) {
            return Err(Error::parse(format!("ordered_ids[{pos}]"), format!("{id} is out of range or repeated")));
        }
        if pos > 0 && nodes[id].cost < nodes[file.ordered_ids[pos - 1]].cost {
            return Err(Error::parse(format!("ordered_ids[{pos}]"), "costs decrease along the order"));
        }
    }
    let subgraph = Subgraph {
        nodes,
        n_features: file.n_features,
        n_classes: file.n_classes,
        ordered_ids: file.ordered_ids,
    };
    Ok(TrainedModel {
        subgraph,
        kernel: Kernel::new(distance, file.backend, DomainMode::Lenient),
        format_version: file.format_version,
        train_seconds: 0.0,
    })
}

impl<T: Scalar> TrainedModel<T> {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        save_model(self, &mut out).expect("writing to memory cannot fail");
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        save_model(self, &mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        load_model(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}
