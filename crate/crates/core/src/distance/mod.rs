//! Distance kernels.
//!
//! Every measure in [`DistanceId`] has two implementations computing the same
//! formula: [`reference`] evaluates it directly, [`optimized`] fuses its sums
//! into one multi-lane pass. [`Kernel`] bundles a measure, a backend and a
//! [`DomainMode`], and is what the classifier calls.
//!
//! In lenient mode, components outside a measure's input domain are clamped
//! (negatives to zero, or up to `1e-10` for positive-only measures), and
//! denominators or log arguments smaller than `1e-10` are replaced by
//! `1e-10`. Strict mode performs the same substitutions but reports any of
//! them as a domain error.

mod guard;
pub mod optimized;
pub mod reference;
mod registry;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use guard::Guard;
pub use registry::{registry_lookup, DistanceId, DistanceSpec, Family, InputDomain};

use crate::error::{Error, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelBackend {
    Reference,
    #[default]
    Optimized,
}

impl KernelBackend {
    pub const ALL: [KernelBackend; 2] = [KernelBackend::Reference, KernelBackend::Optimized];

    pub fn name(self) -> &'static str {
        match self {
            KernelBackend::Reference => "reference",
            KernelBackend::Optimized => "optimized",
        }
    }
}

impl fmt::Display for KernelBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reference" | "ref" => Ok(KernelBackend::Reference),
            "optimized" | "opt" => Ok(KernelBackend::Optimized),
            _ => Err(Error::UnknownBackend(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DomainMode {
    #[default]
    Lenient,
    Strict,
}

type KernelFn<T> = fn(&[T], &[T], &mut Guard<T>) -> T;

macro_rules! dispatch {
    ($module:ident, $id:expr) => {
        match $id {
            DistanceId::Chebyshev => $module::chebyshev,
            DistanceId::ChiSquared => $module::chi_squared,
            DistanceId::Euclidean => $module::euclidean,
            DistanceId::Gaussian => $module::gaussian,
            DistanceId::LogEuclidean => $module::log_euclidean,
            DistanceId::Manhattan => $module::manhattan,
            DistanceId::BrayCurtis => $module::bray_curtis,
            DistanceId::Canberra => $module::canberra,
            DistanceId::Gower => $module::gower,
            DistanceId::Kulczynski => $module::kulczynski,
            DistanceId::Lorentzian => $module::lorentzian,
            DistanceId::NonIntersection => $module::non_intersection,
            DistanceId::Soergel => $module::soergel,
            DistanceId::Chord => $module::chord,
            DistanceId::Cosine => $module::cosine,
            DistanceId::Dice => $module::dice,
            DistanceId::Jaccard => $module::jaccard,
            DistanceId::Bhattacharyya => $module::bhattacharyya,
            DistanceId::Hellinger => $module::hellinger,
            DistanceId::Matusita => $module::matusita,
            DistanceId::SquaredChord => $module::squared_chord,
            DistanceId::AdditiveSymmetricChiSquared => $module::additive_symmetric_chi_squared,
            DistanceId::AverageEuclidean => $module::average_euclidean,
            DistanceId::Clark => $module::clark,
            DistanceId::Divergence => $module::divergence,
            DistanceId::LogSquaredEuclidean => $module::log_squared_euclidean,
            DistanceId::MeanCensoredEuclidean => $module::mean_censored_euclidean,
            DistanceId::NeymanChiSquared => $module::neyman_chi_squared,
            DistanceId::PearsonChiSquared => $module::pearson_chi_squared,
            DistanceId::SangviChiSquared => $module::sangvi_chi_squared,
            DistanceId::SquaredChiSquared => $module::squared_chi_squared,
            DistanceId::SquaredEuclidean => $module::squared_euclidean,
            DistanceId::Jeffreys => $module::jeffreys,
            DistanceId::Jensen => $module::jensen,
            DistanceId::JensenShannon => $module::jensen_shannon,
            DistanceId::KDivergence => $module::k_divergence,
            DistanceId::KullbackLeibler => $module::kullback_leibler,
            DistanceId::Topsoe => $module::topsoe,
            DistanceId::MaxSymmetricChiSquared => $module::max_symmetric_chi_squared,
            DistanceId::MinSymmetricChiSquared => $module::min_symmetric_chi_squared,
            DistanceId::VicisSymmetric1 => $module::vicis_symmetric_1,
            DistanceId::VicisSymmetric2 => $module::vicis_symmetric_2,
            DistanceId::VicisSymmetric3 => $module::vicis_symmetric_3,
            DistanceId::VicisWaveHedges => $module::vicis_wave_hedges,
            DistanceId::Hamming => $module::hamming,
            DistanceId::Hassanat => $module::hassanat,
            DistanceId::Statistic => $module::statistic,
        }
    };
}

/// A measure bound to a backend and a domain mode.
#[derive(Clone, Copy)]
pub struct Kernel<T> {
    id: DistanceId,
    backend: KernelBackend,
    mode: DomainMode,
    func: KernelFn<T>,
}

impl<T> fmt::Debug for Kernel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Kernel")
            .field("id", &self.id)
            .field("backend", &self.backend)
            .field("mode", &self.mode)
            .finish()
    }
}

impl<T: Scalar> Kernel<T> {
    pub fn new(id: DistanceId, backend: KernelBackend, mode: DomainMode) -> Self {
        let func: KernelFn<T> = match backend {
            KernelBackend::Reference => dispatch!(reference, id),
            KernelBackend::Optimized => dispatch!(optimized, id),
        };
        Kernel {
            id,
            backend,
            mode,
            func,
        }
    }

    pub fn id(&self) -> DistanceId {
        self.id
    }

    pub fn backend(&self) -> KernelBackend {
        self.backend
    }

    pub fn mode(&self) -> DomainMode {
        self.mode
    }

    pub fn spec(&self) -> DistanceSpec {
        self.id.spec()
    }

    /// Evaluates `d(x, y)`, validating lengths and finiteness first.
    pub fn evaluate(&self, x: &[T], y: &[T]) -> Result<T> {
        if x.len() != y.len() {
            return Err(Error::Shape {
                expected: x.len(),
                found: y.len(),
            });
        }
        if x.is_empty() {
            return Err(Error::Shape {
                expected: 1,
                found: 0,
            });
        }
        if x.iter().chain(y).any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite input component".into()));
        }
        self.evaluate_finite(x, y)
    }

    /// Evaluates `d(x, y)` for inputs already known to be finite and of
    /// equal non-zero length.
    #[inline]
    pub fn evaluate_finite(&self, x: &[T], y: &[T]) -> Result<T> {
        debug_assert_eq!(x.len(), y.len());
        let mut guard = Guard::default();
        let value = guard::finish((self.func)(x, y, &mut guard));
        if self.mode == DomainMode::Strict && guard.trips > 0 {
            return Err(Error::Domain(format!(
                "{} is undefined on these inputs ({} guarded term(s))",
                self.id, guard.trips
            )));
        }
        if !value.is_finite() {
            return Err(Error::Domain(format!("{} overflowed", self.id)));
        }
        Ok(value)
    }

    /// Checks every component against the measure's declared input domain.
    pub fn check_domain(&self, x: &[T]) -> Result<()> {
        let domain = self.id.spec().input_domain;
        match x.iter().position(|v| !domain.contains(v.to_f64_lossy())) {
            Some(i) => Err(Error::Domain(format!(
                "component {i} = {} is outside the {:?} domain of {}",
                x[i], domain, self.id
            ))),
            None => Ok(()),
        }
    }
}

/// Evaluates one measure in lenient mode.
pub fn evaluate<T: Scalar>(id: DistanceId, x: &[T], y: &[T], backend: KernelBackend) -> Result<T> {
    Kernel::new(id, backend, DomainMode::Lenient).evaluate(x, y)
}

/// Dense row-major `n × n` matrix of pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> PairwiseMatrix<T> {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Computes `M[i][j] = d(rows[i], rows[j])` for every ordered pair, in
/// parallel over rows. Each entry is computed independently, so the result
/// does not depend on the number of workers.
pub fn pairwise_matrix<T: Scalar, R: AsRef<[T]> + Sync>(kernel: &Kernel<T>, rows: &[R]) -> Result<PairwiseMatrix<T>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parameter("pairwise matrix needs at least one row".into()));
    }
    let width = rows[0].as_ref().len();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != width || width == 0 {
            return Err(Error::Row {
                row: i,
                source: Box::new(Error::Shape {
                    expected: width.max(1),
                    found: row.len(),
                }),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Row {
                row: i,
                source: Box::new(Error::Domain("non-finite input component".into())),
            });
        }
    }
    let mut data = vec![T::zero(); n * n];
    data.par_chunks_mut(n)
        .enumerate()
        .try_for_each(|(i, out)| {
            let xi = rows[i].as_ref();
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = kernel
                    .evaluate_finite(xi, rows[j].as_ref())
                    .map_err(|e| Error::Pairwise {
                        row: i,
                        col: j,
                        source: Box::new(e),
                    })?;
            }
            Ok::<(), Error>(())
        })?;
    Ok(PairwiseMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(id: DistanceId, x: &[f64], y: &[f64]) -> f64 {
        let r = evaluate(id, x, y, KernelBackend::Reference).unwrap();
        let o = evaluate(id, x, y, KernelBackend::Optimized).unwrap();
        assert!((r - o).abs() <= 1e-12 * r.abs().max(1.0), "{id}: {r} vs {o}");
        r
    }

    #[test]
    fn hand_computed_values() {
        assert_eq!(both(DistanceId::Euclidean, &[0.0, 0.0], &[3.0, 4.0]), 5.0);
        assert_eq!(both(DistanceId::Cosine, &[1.0, 0.0], &[0.0, 1.0]), 1.0);
        assert_eq!(both(DistanceId::Hamming, &[1.0, 0.0, 1.0], &[1.0, 1.0, 1.0]), 1.0);
        assert_eq!(both(DistanceId::Chebyshev, &[1.0, 5.0], &[4.0, 9.0]), 4.0);
        assert_eq!(both(DistanceId::Manhattan, &[1.0, 2.0], &[3.0, 5.0]), 5.0);
        assert_eq!(both(DistanceId::SquaredChiSquared, &[1.0, 1.0], &[3.0, 1.0]), 1.0);
    }

    #[test]
    fn more_hand_computed_values() {
        let x = [1.0, 2.0];
        let y = [3.0, 1.0];
        // |1-3| + |2-1| = 3; sums 7
        assert!((both(DistanceId::BrayCurtis, &x, &y) - 3.0 / 7.0).abs() < 1e-15);
        // 2/4 + 1/3
        assert!((both(DistanceId::Canberra, &x, &y) - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
        assert!((both(DistanceId::Gower, &x, &y) - 1.5).abs() < 1e-15);
        // min sum 2, max sum 5
        assert!((both(DistanceId::Kulczynski, &x, &y) - 1.5).abs() < 1e-15);
        assert!((both(DistanceId::Soergel, &x, &y) - 0.6).abs() < 1e-15);
        assert!((both(DistanceId::NonIntersection, &x, &y) - 1.5).abs() < 1e-15);
        // Σ d² = 5
        assert!((both(DistanceId::SquaredEuclidean, &x, &y) - 5.0).abs() < 1e-15);
        assert!((both(DistanceId::LogSquaredEuclidean, &x, &y) - 6f64.ln()).abs() < 1e-15);
        assert!((both(DistanceId::AverageEuclidean, &x, &y) - 2.5f64.sqrt()).abs() < 1e-15);
        // 4/1 + 1/2 and 4/3 + 1/1
        assert!((both(DistanceId::NeymanChiSquared, &x, &y) - 4.5).abs() < 1e-15);
        assert!((both(DistanceId::PearsonChiSquared, &x, &y) - 7.0 / 3.0).abs() < 1e-15);
        assert!((both(DistanceId::MaxSymmetricChiSquared, &x, &y) - 4.5).abs() < 1e-15);
        assert!((both(DistanceId::MinSymmetricChiSquared, &x, &y) - 7.0 / 3.0).abs() < 1e-15);
        // Σ d²/min = 4/1 + 1/1, Σ d²/max = 4/3 + 1/2, Σ |d|/min = 2 + 1
        assert!((both(DistanceId::VicisSymmetric2, &x, &y) - 5.0).abs() < 1e-15);
        assert!((both(DistanceId::VicisSymmetric3, &x, &y) - (4.0 / 3.0 + 0.5)).abs() < 1e-15);
        assert!((both(DistanceId::VicisWaveHedges, &x, &y) - 3.0).abs() < 1e-15);
        // Hassanat: 1 - 2/4 + 1 - 2/3
        assert!((both(DistanceId::Hassanat, &x, &y) - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
        assert!((both(DistanceId::Hassanat, &[-1.0], &[1.0]) - (1.0 - 1.0 / 3.0)).abs() < 1e-15);
        assert!((both(DistanceId::Statistic, &x, &y) - 1.5).abs() < 1e-15);
        assert!((both(DistanceId::KullbackLeibler, &[1.0], &[2.0]) - 0.5f64.ln().abs()).abs() < 1e-15);
    }

    #[test]
    fn guards_and_modes() {
        let x = [0.0, 1.0];
        let y = [0.0, 3.0];
        let lenient = Kernel::<f64>::new(DistanceId::ChiSquared, KernelBackend::Reference, DomainMode::Lenient);
        assert_eq!(lenient.evaluate(&x, &y).unwrap(), 1.0);
        let strict = Kernel::<f64>::new(DistanceId::ChiSquared, KernelBackend::Optimized, DomainMode::Strict);
        assert!(strict.evaluate(&x, &y).unwrap_err().is_domain());
        assert_eq!(strict.evaluate(&[2.0, 1.0], &[2.0, 3.0]).unwrap(), 1.0);

        let kl = Kernel::<f64>::new(DistanceId::KullbackLeibler, KernelBackend::Reference, DomainMode::Strict);
        assert!(kl.evaluate(&[-1.0], &[1.0]).is_err());
        assert!(kl.check_domain(&[1.0, 0.0]).is_err());
        assert!(kl.check_domain(&[1.0, 0.5]).is_ok());
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        let k = Kernel::<f64>::new(DistanceId::Euclidean, KernelBackend::Optimized, DomainMode::Lenient);
        assert!(matches!(k.evaluate(&[1.0], &[1.0, 2.0]), Err(Error::Shape { .. })));
        assert!(matches!(k.evaluate(&[], &[]), Err(Error::Shape { .. })));
        assert!(k.evaluate(&[f64::NAN], &[1.0]).unwrap_err().is_domain());
        assert!(k.evaluate(&[f64::INFINITY], &[1.0]).unwrap_err().is_domain());
    }

    #[test]
    fn pairwise_small_cases() {
        let k = Kernel::<f64>::new(DistanceId::Euclidean, KernelBackend::Reference, DomainMode::Lenient);
        let m = pairwise_matrix(&k, &[vec![1.0, 2.0]]).unwrap();
        assert_eq!(m.row(0), &[0.0]);
        let m = pairwise_matrix(&k, &[vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.row(0), &[0.0, 5.0]);
        assert_eq!(m.row(1), &[5.0, 0.0]);
    }

    #[test]
    fn pairwise_reports_failing_pair() {
        let k = Kernel::<f64>::new(DistanceId::KullbackLeibler, KernelBackend::Optimized, DomainMode::Strict);
        let err = pairwise_matrix(&k, &[vec![1.0], vec![0.0]]).unwrap_err();
        assert!(matches!(err, Error::Pairwise { .. }));
        assert!(err.is_domain());
    }

    #[test]
    fn single_precision_kernels() {
        let d = evaluate(DistanceId::Euclidean, &[0.0f32, 0.0], &[3.0, 4.0], KernelBackend::Optimized).unwrap();
        assert_eq!(d, 5.0f32);
    }

    #[test]
    fn backend_names_parse() {
        assert_eq!("reference".parse::<KernelBackend>().unwrap(), KernelBackend::Reference);
        assert_eq!("Optimized".parse::<KernelBackend>().unwrap(), KernelBackend::Optimized);
        assert!("numba".parse::<KernelBackend>().is_err());
    }
}
