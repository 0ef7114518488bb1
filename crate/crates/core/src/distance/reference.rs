//! Reference kernels: each formula written the direct way, one
//! sequentially accumulated sum per term, separate passes where the formula
//! has separate sums.

use super::guard::{sqrt0, Guard};
use crate::Scalar;

#[inline]
fn pairs<'a, T: Scalar>(x: &'a [T], y: &'a [T]) -> impl Iterator<Item = (T, T)> + 'a {
    x.iter().copied().zip(y.iter().copied())
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

fn half<T: Scalar>() -> T {
    T::one() / two()
}

pub fn chebyshev<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y).fold(T::zero(), |m, (a, b)| m.max((a - b).abs()))
}

pub fn chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.nn(a), g.nn(b));
            (a - b).powi(2) / g.den(a + b)
        })
        .sum()
}

pub fn squared_euclidean<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y).map(|(a, b)| (a - b).powi(2)).sum()
}

pub fn euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_euclidean(x, y, g).sqrt()
}

pub fn gaussian<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    T::one() - (-half::<T>() * euclidean(x, y, g)).exp()
}

pub fn log_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    euclidean(x, y, g).ln_1p()
}

pub fn manhattan<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y).map(|(a, b)| (a - b).abs()).sum()
}

pub fn bray_curtis<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let num: T = pairs(x, y).map(|(a, b)| (g.nn(a) - g.nn(b)).abs()).sum();
    let den: T = pairs(x, y).map(|(a, b)| g.nn(a) + g.nn(b)).sum();
    num / g.den(den)
}

pub fn canberra<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| (a - b).abs() / g.den(a.abs() + b.abs()))
        .sum()
}

pub fn gower<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    manhattan(x, y, g) / T::from_count(x.len())
}

pub fn kulczynski<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let num: T = pairs(x, y).map(|(a, b)| (g.nn(a) - g.nn(b)).abs()).sum();
    let den: T = pairs(x, y).map(|(a, b)| g.nn(a).min(g.nn(b))).sum();
    num / g.den(den)
}

pub fn lorentzian<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y).map(|(a, b)| (a - b).abs().ln_1p()).sum()
}

pub fn non_intersection<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    half::<T>() * manhattan(x, y, g)
}

pub fn soergel<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let num: T = pairs(x, y).map(|(a, b)| (g.nn(a) - g.nn(b)).abs()).sum();
    let den: T = pairs(x, y).map(|(a, b)| g.nn(a).max(g.nn(b))).sum();
    num / g.den(den)
}

fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    pairs(x, y).map(|(a, b)| a * b).sum()
}

fn cosine_similarity<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let xy = dot(x, y);
    let xx = dot(x, x);
    let yy = dot(y, y);
    xy / g.den((xx * yy).sqrt())
}

pub fn chord<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sqrt0(two::<T>() - two::<T>() * cosine_similarity(x, y, g))
}

pub fn cosine<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    T::one() - cosine_similarity(x, y, g)
}

pub fn dice<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let xy = dot(x, y);
    let den = dot(x, x) + dot(y, y);
    T::one() - two::<T>() * xy / g.den(den)
}

pub fn jaccard<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let xy = dot(x, y);
    let den = dot(x, x) + dot(y, y) - xy;
    T::one() - xy / g.den(den)
}

pub fn bhattacharyya<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let coefficient: T = pairs(x, y).map(|(a, b)| (g.nn(a) * g.nn(b)).sqrt()).sum();
    (-g.ln(coefficient)).abs()
}

pub fn squared_chord<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| (g.nn(a).sqrt() - g.nn(b).sqrt()).powi(2))
        .sum()
}

pub fn hellinger<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    (two::<T>() * squared_chord(x, y, g)).sqrt()
}

pub fn matusita<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_chord(x, y, g).sqrt()
}

pub fn additive_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).powi(2) * (a + b) / g.den(a * b)
        })
        .sum()
}

pub fn average_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    (squared_euclidean(x, y, g) / T::from_count(x.len())).sqrt()
}

pub fn clark<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.nn(a), g.nn(b));
            ((a - b).abs() / g.den(a + b)).powi(2)
        })
        .sum::<T>()
        .sqrt()
}

pub fn divergence<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let sum: T = pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.nn(a), g.nn(b));
            (a - b).powi(2) / g.den((a + b).powi(2))
        })
        .sum();
    two::<T>() * sum
}

pub fn log_squared_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_euclidean(x, y, g).ln_1p()
}

pub fn mean_censored_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let sum = squared_euclidean(x, y, g);
    let count = pairs(x, y).filter(|&(a, b)| a + b != T::zero()).count();
    (sum / g.den(T::from_count(count))).sqrt()
}

pub fn neyman_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).powi(2) / g.den(a)
        })
        .sum()
}

pub fn pearson_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).powi(2) / g.den(b)
        })
        .sum()
}

pub fn sangvi_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    two::<T>() * squared_chi_squared(x, y, g)
}

pub fn squared_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    chi_squared(x, y, g)
}

pub fn jeffreys<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b) * g.ln(a / b)
        })
        .sum()
}

pub fn jensen<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            let m = (a + b) / two();
            (a * g.ln(a) + b * g.ln(b)) / two() - m * g.ln(m)
        })
        .sum()
}

/// `Σ a ln(2a / (a + b))`, the building block of the K-divergence family.
fn k_sum<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            a * g.ln(two::<T>() * a / (a + b))
        })
        .sum()
}

pub fn jensen_shannon<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    half::<T>() * (k_sum(x, y, g) + k_sum(y, x, g))
}

pub fn k_divergence<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    k_sum(x, y, g).abs()
}

pub fn kullback_leibler<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            a * g.ln(a / b)
        })
        .sum::<T>()
        .abs()
}

pub fn topsoe<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    k_sum(x, y, g) + k_sum(y, x, g)
}

pub fn max_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    neyman_chi_squared(x, y, g).max(pearson_chi_squared(x, y, g))
}

pub fn min_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    neyman_chi_squared(x, y, g).min(pearson_chi_squared(x, y, g))
}

pub fn vicis_symmetric_1<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).powi(2) / g.den(a.min(b).powi(2))
        })
        .sum()
}

pub fn vicis_symmetric_2<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).powi(2) / g.den(a.min(b))
        })
        .sum()
}

pub fn vicis_symmetric_3<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.nn(a), g.nn(b));
            (a - b).powi(2) / g.den(a.max(b))
        })
        .sum()
}

pub fn vicis_wave_hedges<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (a, b) = (g.pos(a), g.pos(b));
            (a - b).abs() / g.den(a.min(b))
        })
        .sum()
}

pub fn hamming<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    T::from_count(pairs(x, y).filter(|(a, b)| a != b).count())
}

pub fn hassanat<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| {
            let (lo, hi) = (a.min(b), a.max(b));
            let shift = if lo < T::zero() { lo.abs() } else { T::zero() };
            T::one() - (T::one() + lo + shift) / (T::one() + hi + shift)
        })
        .sum()
}

pub fn statistic<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    pairs(x, y)
        .map(|(a, b)| (a - (a + b) / two()).abs())
        .sum()
}
