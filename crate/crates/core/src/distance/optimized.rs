//! Optimized kernels.
//!
//! Every measure is evaluated in one fused pass. Sums are split across
//! `LANES` independent accumulators so the floating-point dependency chain
//! is broken up and the inner loop can be vectorized; lanes are combined
//! with a fixed pairwise tree at the end. Norms that several terms share are
//! accumulated once alongside the numerator.

use super::guard::{sqrt0, Guard};
use crate::Scalar;

const LANES: usize = 8;

/// Accumulates `K` sums of per-component terms over `LANES` lanes.
// Plain indexing here; the iterator form compiled to a measurably slower loop.
#[allow(clippy::needless_range_loop)]
#[inline(always)]
fn fold<T: Scalar, const K: usize>(x: &[T], y: &[T], mut term: impl FnMut(T, T) -> [T; K]) -> [T; K] {
    let mut acc = [[T::zero(); K]; LANES];
    let xs = x.chunks_exact(LANES);
    let ys = y.chunks_exact(LANES);
    let (x_tail, y_tail) = (xs.remainder(), ys.remainder());
    for (cx, cy) in xs.zip(ys) {
        for lane in 0..LANES {
            let t = term(cx[lane], cy[lane]);
            for k in 0..K {
                acc[lane][k] = acc[lane][k] + t[k];
            }
        }
    }
    for (lane, (&a, &b)) in x_tail.iter().zip(y_tail).enumerate() {
        let t = term(a, b);
        for k in 0..K {
            acc[lane][k] = acc[lane][k] + t[k];
        }
    }
    let mut width = LANES;
    while width > 1 {
        width /= 2;
        for lane in 0..width {
            for k in 0..K {
                acc[lane][k] = acc[lane][k] + acc[lane + width][k];
            }
        }
    }
    acc[0]
}

#[inline(always)]
fn sum<T: Scalar>(x: &[T], y: &[T], mut term: impl FnMut(T, T) -> T) -> T {
    fold(x, y, |a, b| [term(a, b)])[0]
}

fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

fn half<T: Scalar>() -> T {
    T::one() / two()
}

pub fn chebyshev<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    let mut acc = [T::zero(); LANES];
    let xs = x.chunks_exact(LANES);
    let ys = y.chunks_exact(LANES);
    let (x_tail, y_tail) = (xs.remainder(), ys.remainder());
    for (cx, cy) in xs.zip(ys) {
        for lane in 0..LANES {
            acc[lane] = acc[lane].max((cx[lane] - cy[lane]).abs());
        }
    }
    for (lane, (&a, &b)) in x_tail.iter().zip(y_tail).enumerate() {
        acc[lane] = acc[lane].max((a - b).abs());
    }
    acc.iter().fold(T::zero(), |m, &v| m.max(v))
}

pub fn chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        let d = a - b;
        d * d / g.den(a + b)
    })
}

pub fn squared_euclidean<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let d = a - b;
        d * d
    })
}

pub fn euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_euclidean(x, y, g).sqrt()
}

pub fn gaussian<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    -(-half::<T>() * euclidean(x, y, g)).exp_m1()
}

pub fn log_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    euclidean(x, y, g).ln_1p()
}

pub fn manhattan<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    sum(x, y, |a, b| (a - b).abs())
}

pub fn bray_curtis<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [num, den] = fold(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        [(a - b).abs(), a + b]
    });
    num / g.den(den)
}

pub fn canberra<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| (a - b).abs() / g.den(a.abs() + b.abs()))
}

pub fn gower<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    manhattan(x, y, g) / T::from_count(x.len())
}

pub fn kulczynski<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [num, den] = fold(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        [(a - b).abs(), a.min(b)]
    });
    num / g.den(den)
}

pub fn lorentzian<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    sum(x, y, |a, b| (a - b).abs().ln_1p())
}

pub fn non_intersection<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    half::<T>() * manhattan(x, y, g)
}

pub fn soergel<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [num, den] = fold(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        [(a - b).abs(), a.max(b)]
    });
    num / g.den(den)
}

/// `[Σxy, Σx², Σy²]` in one pass.
#[inline(always)]
fn products<T: Scalar>(x: &[T], y: &[T]) -> [T; 3] {
    fold(x, y, |a, b| [a * b, a * a, b * b])
}

pub fn chord<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [xy, xx, yy] = products(x, y);
    sqrt0(two::<T>() - two::<T>() * (xy / g.den((xx * yy).sqrt())))
}

pub fn cosine<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [xy, xx, yy] = products(x, y);
    T::one() - xy / g.den((xx * yy).sqrt())
}

pub fn dice<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [xy, xx, yy] = products(x, y);
    T::one() - two::<T>() * xy / g.den(xx + yy)
}

pub fn jaccard<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [xy, xx, yy] = products(x, y);
    T::one() - xy / g.den(xx + yy - xy)
}

pub fn bhattacharyya<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let coefficient = sum(x, y, |a, b| (g.nn(a) * g.nn(b)).sqrt());
    (-g.ln(coefficient)).abs()
}

pub fn squared_chord<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let d = g.nn(a).sqrt() - g.nn(b).sqrt();
        d * d
    })
}

pub fn hellinger<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    (two::<T>() * squared_chord(x, y, g)).sqrt()
}

pub fn matusita<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_chord(x, y, g).sqrt()
}

pub fn additive_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let d = a - b;
        d * d * (a + b) / g.den(a * b)
    })
}

pub fn average_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    (squared_euclidean(x, y, g) / T::from_count(x.len())).sqrt()
}

pub fn clark<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        let r = (a - b).abs() / g.den(a + b);
        r * r
    })
    .sqrt()
}

pub fn divergence<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    two::<T>()
        * sum(x, y, |a, b| {
            let (a, b) = (g.nn(a), g.nn(b));
            let (d, s) = (a - b, a + b);
            d * d / g.den(s * s)
        })
}

pub fn log_squared_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    squared_euclidean(x, y, g).ln_1p()
}

pub fn mean_censored_euclidean<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [sq, count] = fold(x, y, |a, b| {
        let d = a - b;
        let nonzero = if a + b != T::zero() { T::one() } else { T::zero() };
        [d * d, nonzero]
    });
    (sq / g.den(count)).sqrt()
}

/// `[Σd²/x, Σd²/y]` in one pass, shared by the chi-squared variants.
#[inline(always)]
fn chi_pair<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> [T; 2] {
    fold(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let d2 = (a - b) * (a - b);
        [d2 / g.den(a), d2 / g.den(b)]
    })
}

pub fn neyman_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let d = a - b;
        d * d / g.den(a)
    })
}

pub fn pearson_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let d = a - b;
        d * d / g.den(b)
    })
}

pub fn sangvi_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    two::<T>() * chi_squared(x, y, g)
}

pub fn squared_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    chi_squared(x, y, g)
}

pub fn jeffreys<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        (a - b) * g.ln(a / b)
    })
}

pub fn jensen<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let m = (a + b) / two();
        (a * g.ln(a) + b * g.ln(b)) / two() - m * g.ln(m)
    })
}

/// `[Σ x ln(2x/(x+y)), Σ y ln(2y/(x+y))]` in one pass.
#[inline(always)]
fn k_pair<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> [T; 2] {
    fold(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let s = a + b;
        [a * g.ln(two::<T>() * a / s), b * g.ln(two::<T>() * b / s)]
    })
}

pub fn jensen_shannon<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [kx, ky] = k_pair(x, y, g);
    half::<T>() * (kx + ky)
}

pub fn k_divergence<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        a * g.ln(two::<T>() * a / (a + b))
    })
    .abs()
}

pub fn kullback_leibler<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        a * g.ln(a / b)
    })
    .abs()
}

pub fn topsoe<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [kx, ky] = k_pair(x, y, g);
    kx + ky
}

pub fn max_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [nx, ny] = chi_pair(x, y, g);
    nx.max(ny)
}

pub fn min_symmetric_chi_squared<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    let [nx, ny] = chi_pair(x, y, g);
    nx.min(ny)
}

pub fn vicis_symmetric_1<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let (d, lo) = (a - b, a.min(b));
        d * d / g.den(lo * lo)
    })
}

pub fn vicis_symmetric_2<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        let d = a - b;
        d * d / g.den(a.min(b))
    })
}

pub fn vicis_symmetric_3<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.nn(a), g.nn(b));
        let d = a - b;
        d * d / g.den(a.max(b))
    })
}

pub fn vicis_wave_hedges<T: Scalar>(x: &[T], y: &[T], g: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (a, b) = (g.pos(a), g.pos(b));
        (a - b).abs() / g.den(a.min(b))
    })
}

pub fn hamming<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    sum(x, y, |a, b| if a != b { T::one() } else { T::zero() })
}

pub fn hassanat<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    sum(x, y, |a, b| {
        let (lo, hi) = (a.min(b), a.max(b));
        let shift = lo.min(T::zero()).abs();
        T::one() - (T::one() + lo + shift) / (T::one() + hi + shift)
    })
}

pub fn statistic<T: Scalar>(x: &[T], y: &[T], _: &mut Guard<T>) -> T {
    // |x - (x+y)/2| = |x - y| / 2
    half::<T>() * sum(x, y, |a, b| (a - b).abs())
}
