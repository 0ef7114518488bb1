//! Gaussian blob datasets.

use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::stream::{rng, Dataset};

/// Isotropic Gaussian classes whose centers sit on the first axis,
/// `separation · sigma` apart.
#[derive(Debug, Clone, PartialEq)]
pub struct BlobSpec {
    pub classes: usize,
    pub per_class: usize,
    pub dim: usize,
    /// Gap between neighbouring centers, in standard deviations.
    pub separation: f64,
    pub sigma: f64,
    pub seed: u64,
    /// Translate every feature so its minimum equals this value (for
    /// measures that need non-negative or positive inputs). Distances that
    /// only depend on differences are unaffected.
    pub floor: Option<f64>,
}

impl Default for BlobSpec {
    fn default() -> Self {
        BlobSpec {
            classes: 2,
            per_class: 100,
            dim: 2,
            separation: 10.0,
            sigma: 1.0,
            seed: 0,
            floor: None,
        }
    }
}

impl BlobSpec {
    pub fn len(&self) -> usize {
        self.classes * self.per_class
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for BlobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "classes={},per_class={},dim={},separation={},sigma={},seed={}",
            self.classes, self.per_class, self.dim, self.separation, self.sigma, self.seed
        )?;
        if let Some(floor) = self.floor {
            write!(f, ",floor={floor}")?;
        }
        Ok(())
    }
}

/// `key=value` pairs separated by commas; omitted keys keep their defaults.
impl FromStr for BlobSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = BlobSpec::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value, found {part:?}")))?;
            let bad = |e: &dyn fmt::Display| Error::Parameter(format!("{key}: {e}"));
            match key.trim() {
                "classes" => spec.classes = value.parse().map_err(|e| bad(&e))?,
                "per_class" => spec.per_class = value.parse().map_err(|e| bad(&e))?,
                "dim" => spec.dim = value.parse().map_err(|e| bad(&e))?,
                "separation" | "sep" => spec.separation = value.parse().map_err(|e| bad(&e))?,
                "sigma" => spec.sigma = value.parse().map_err(|e| bad(&e))?,
                "seed" => spec.seed = value.parse().map_err(|e| bad(&e))?,
                "floor" => spec.floor = Some(value.parse().map_err(|e| bad(&e))?),
                other => return Err(Error::Parameter(format!("unknown blob parameter {other:?}"))),
            }
        }
        Ok(spec)
    }
}

/// Samples are grouped by class; ids run from 0 and labels from 1.
pub fn generate_synthetic(spec: &BlobSpec) -> Result<Dataset> {
    if spec.classes < 1 || spec.per_class < 1 || spec.dim < 1 {
        return Err(Error::Parameter(
            "classes, per_class and dim must all be at least 1".into(),
        ));
    }
    if !(spec.sigma.is_finite() && spec.sigma > 0.0) {
        return Err(Error::Parameter(format!("sigma must be positive, got {}", spec.sigma)));
    }
    if !(spec.separation.is_finite() && spec.separation >= 0.0) {
        return Err(Error::Parameter(format!(
            "separation must be non-negative, got {}",
            spec.separation
        )));
    }
    let n = spec.len();
    if n > u32::MAX as usize {
        return Err(Error::Parameter(format!("{n} samples is too many")));
    }
    let noise = Normal::new(0.0, spec.sigma).map_err(|e| Error::Parameter(e.to_string()))?;
    let mut rng = rng(spec.seed);
    let mut labels = Vec::with_capacity(n);
    let mut features = Vec::with_capacity(n);
    for class in 0..spec.classes {
        let center = class as f64 * spec.separation * spec.sigma;
        for _ in 0..spec.per_class {
            let mut row: Vec<f64> = (0..spec.dim).map(|_| noise.sample(&mut rng)).collect();
            row[0] += center;
            labels.push(class as u32 + 1);
            features.push(row);
        }
    }
    if let Some(floor) = spec.floor {
        if !floor.is_finite() {
            return Err(Error::Parameter(format!("floor must be finite, got {floor}")));
        }
        for j in 0..spec.dim {
            let lo = features.iter().map(|r| r[j]).fold(f64::INFINITY, f64::min);
            for row in &mut features {
                row[j] = row[j] - lo + floor;
            }
        }
    }
    Dataset::new((0..n as u32).collect(), labels, features)
}
