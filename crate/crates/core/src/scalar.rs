use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point type the classifier and the distance kernels are generic over.
///
/// Implemented for `f32` and `f64`. Path costs, features and kernel
/// accumulators all use the same scalar, so `f64` is the type to reach for
/// whenever cost ties matter; the crate-root aliases default to it.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Name written into model files so a file is never loaded as the wrong width.
    const NAME: &'static str;

    /// Guard value substituted for vanishing denominators and log arguments.
    fn guard_eps() -> Self;

    fn from_f64_lossy(v: f64) -> Self;

    fn to_f64_lossy(self) -> f64;

    fn from_count(n: usize) -> Self;
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";

    #[inline]
    fn guard_eps() -> Self {
        1e-10
    }

    #[inline]
    fn from_f64_lossy(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        n as f32
    }
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";

    #[inline]
    fn guard_eps() -> Self {
        1e-10
    }

    #[inline]
    fn from_f64_lossy(v: f64) -> Self {
        v
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        n as f64
    }
}
