use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Subgraph;
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Txt,
    Csv,
    Json,
    Opf,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Txt, Format::Csv, Format::Json, Format::Opf];

    pub fn extension(self) -> &'static str {
        match self {
            Format::Txt => "txt",
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Opf => "opf",
        }
    }

    pub fn from_path(path: &Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        Format::ALL.into_iter().find(|f| f.extension() == ext)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('.').to_ascii_lowercase();
        Format::ALL
            .into_iter()
            .find(|f| f.extension() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown format {s:?}; expected txt, csv, json or opf")))
    }
}

/// Labeled samples as loaded from disk.
///
/// Ids are unique, labels are 1-based, every row has the same non-zero
/// number of features. Equality ignores `source_format`.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub ids: Vec<u32>,
    pub labels: Vec<u32>,
    pub features: Vec<Vec<f64>>,
    pub source_format: Option<Format>,
}

impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.labels == other.labels && self.features == other.features
    }
}

impl Dataset {
    pub fn new(ids: Vec<u32>, labels: Vec<u32>, features: Vec<Vec<f64>>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::Parameter("dataset has no samples".into()));
        }
        if labels.len() != n || features.len() != n {
            return Err(Error::Shape {
                expected: n,
                found: if labels.len() != n { labels.len() } else { features.len() },
            });
        }
        let width = features[0].len();
        if width == 0 {
            return Err(Error::Parameter("samples need at least one feature".into()));
        }
        let mut seen = HashSet::with_capacity(n);
        for row in 0..n {
            if features[row].len() != width {
                return Err(Error::Row {
                    row,
                    source: Box::new(Error::Shape {
                        expected: width,
                        found: features[row].len(),
                    }),
                });
            }
            if labels[row] == 0 {
                return Err(Error::Row {
                    row,
                    source: Box::new(Error::Parameter("labels are 1-based".into())),
                });
            }
            if !seen.insert(ids[row]) {
                return Err(Error::Row {
                    row,
                    source: Box::new(Error::Parameter(format!("duplicate id {}", ids[row]))),
                });
            }
        }
        Ok(Dataset {
            ids,
            labels,
            features,
            source_format: None,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    /// Highest label present.
    pub fn n_classes(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            ids: indices.iter().map(|&i| self.ids[i]).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            source_format: self.source_format,
        }
    }

    /// Copy with every feature rounded through 32-bit floating point.
    pub fn quantized(&self) -> Dataset {
        let mut out = self.clone();
        for row in &mut out.features {
            for v in row.iter_mut() {
                *v = *v as f32 as f64;
            }
        }
        out
    }

    /// Min-max scales every feature to `[0, 1]`; constant features become 0.
    pub fn normalize(&self) -> Dataset {
        let width = self.n_features();
        let mut lo = vec![f64::INFINITY; width];
        let mut hi = vec![f64::NEG_INFINITY; width];
        for row in &self.features {
            for (j, &v) in row.iter().enumerate() {
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
        let mut out = self.clone();
        for row in &mut out.features {
            for (j, v) in row.iter_mut().enumerate() {
                let span = hi[j] - lo[j];
                *v = if span > 0.0 { (*v - lo[j]) / span } else { 0.0 };
            }
        }
        out
    }

    /// Features converted to the requested scalar type.
    pub fn rows<T: Scalar>(&self) -> Vec<Vec<T>> {
        self.features
            .iter()
            .map(|r| r.iter().map(|&v| T::from_f64_lossy(v)).collect())
            .collect()
    }

    /// Builds the training graph: one node per row, node id = row index.
    pub fn to_subgraph<T: Scalar>(&self) -> Result<Subgraph<T>> {
        parse(self)
    }
}

/// One node per row; `n_classes` is the highest label and every label below
/// it must occur.
pub fn parse<T: Scalar>(dataset: &Dataset) -> Result<Subgraph<T>> {
    Subgraph::new(dataset.rows::<T>().into_iter().zip(dataset.labels.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(labels: Vec<u32>) -> Dataset {
        let n = labels.len();
        Dataset::new(
            (0..n as u32).collect(),
            labels,
            (0..n).map(|i| vec![i as f64, 1.0]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn parse_counts_classes() {
        let sg: Subgraph<f64> = parse(&tiny(vec![1, 2, 2])).unwrap();
        assert_eq!(sg.n_classes(), 2);
        assert!(matches!(parse::<f64>(&tiny(vec![1, 3])), Err(Error::MissingClass(2))));
    }

    #[test]
    fn invariants_are_checked() {
        assert!(Dataset::new(vec![0, 0], vec![1, 1], vec![vec![1.0], vec![2.0]]).is_err());
        assert!(Dataset::new(vec![0, 1], vec![1, 0], vec![vec![1.0], vec![2.0]]).is_err());
        assert!(Dataset::new(vec![0, 1], vec![1, 1], vec![vec![1.0], vec![2.0, 3.0]]).is_err());
        assert!(Dataset::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn normalize_is_min_max() {
        let d = tiny(vec![1, 1, 2]).normalize();
        assert_eq!(d.features, vec![vec![0.0, 0.0], vec![0.5, 0.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn format_names() {
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert_eq!(Format::from_path(Path::new("a/b.opf")), Some(Format::Opf));
        assert_eq!(Format::from_path(Path::new("a/b")), None);
    }
}
