//! Paired Wilcoxon signed-rank test.
//!
//! Zero differences are dropped, the rest ranked by magnitude with tied
//! magnitudes sharing their average rank. `W` is the smaller of the positive
//! and negative rank sums. Up to [`EXACT_LIMIT`] pairs the two-sided p-value
//! comes from the exact null distribution of the positive rank sum over all
//! `2^n` sign assignments; above it, from the normal approximation with tie
//! and continuity corrections.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

pub const EXACT_LIMIT: usize = 25;
pub const MIN_PAIRS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    pub w: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Pairs left after dropping zero differences.
    pub n: usize,
    pub p_value: f64,
    pub exact: bool,
}

/// Twice the average rank of each `|d|`, as integers (ranks start at 1).
fn doubled_ranks(magnitudes: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..magnitudes.len()).collect();
    order.sort_by(|&a, &b| magnitudes[a].total_cmp(&magnitudes[b]));
    let mut ranks = vec![0u64; magnitudes.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end + 1 < order.len() && magnitudes[order[end + 1]] == magnitudes[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end+1 share (first + last) / 2
        let doubled = (start + 1 + end + 1) as u64;
        for &i in &order[start..=end] {
            ranks[i] = doubled;
        }
        start = end + 1;
    }
    ranks
}

/// Number of sign assignments giving each doubled positive rank sum.
fn null_counts(doubled: &[u64]) -> Vec<f64> {
    let total: u64 = doubled.iter().sum();
    let mut counts = vec![0f64; total as usize + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in doubled {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    counts
}

pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::Shape {
            expected: a.len(),
            found: b.len(),
        });
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    if diffs.iter().any(|d| !d.is_finite()) {
        return Err(Error::Parameter("samples must be finite".into()));
    }
    let kept: Vec<f64> = diffs.into_iter().filter(|&d| d != 0.0).collect();
    if kept.is_empty() {
        return Err(Error::DegenerateTest("all paired differences are zero".into()));
    }
    if kept.len() < MIN_PAIRS {
        return Err(Error::DegenerateTest(format!(
            "{} non-zero difference(s); at least {MIN_PAIRS} are required",
            kept.len()
        )));
    }
    let n = kept.len();
    let magnitudes: Vec<f64> = kept.iter().map(|d| d.abs()).collect();
    let doubled = doubled_ranks(&magnitudes);
    let plus2: u64 = kept.iter().zip(&doubled).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let total2: u64 = doubled.iter().sum();
    let minus2 = total2 - plus2;
    let (w_plus, w_minus) = (plus2 as f64 / 2.0, minus2 as f64 / 2.0);
    let w2 = plus2.min(minus2);

    let (p_value, exact) = if n <= EXACT_LIMIT {
        let counts = null_counts(&doubled);
        let tail: f64 = counts[..=w2 as usize].iter().sum();
        let p = 2.0 * tail / 2f64.powi(n as i32);
        (p.min(1.0), true)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let mut tie_term = 0.0;
        let mut sorted = magnitudes.clone();
        sorted.sort_by(f64::total_cmp);
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            tie_term += t * t * t - t;
            i = j + 1;
        }
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
        let z = ((w_plus - mean).abs() - 0.5) / var.sqrt();
        (erfc(z / std::f64::consts::SQRT_2).clamp(0.0, 1.0), false)
    };

    Ok(WilcoxonResult {
        w: w2 as f64 / 2.0,
        w_plus,
        w_minus,
        n,
        p_value,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let a = [1.0, -2.0, 3.0, 4.0, 5.0, 7.0];
        let b = [0.0, 0.0, 0.0, 0.0, 0.0, 7.0];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert_eq!(r.n, 5);
        assert_eq!(r.w_plus, 13.0);
        assert_eq!(r.w_minus, 2.0);
        assert_eq!(r.w, 2.0);
        // W+ <= 2 for subsets {}, {1}, {2} of ranks 1..5: 2 * 3/32
        assert!((r.p_value - 6.0 / 32.0).abs() < 1e-15);
        assert!(r.exact);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0; 6], &[1.0; 6]),
            Err(Error::DegenerateTest(_))
        ));
        assert!(matches!(wilcoxon_signed_rank(&[1.0; 6], &[1.0; 5]), Err(Error::Shape { .. })));
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0, 2.0, 3.0], &[0.0; 3]),
            Err(Error::DegenerateTest(_))
        ));
    }

    #[test]
    fn ties_share_average_ranks() {
        assert_eq!(doubled_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![7, 2, 7, 4]);
    }

    #[test]
    fn all_positive_is_extreme() {
        let a: Vec<f64> = (1..=10).map(f64::from).collect();
        let r = wilcoxon_signed_rank(&a, &[0.0; 10]).unwrap();
        assert_eq!(r.w, 0.0);
        assert!((r.p_value - 2.0 / 1024.0).abs() < 1e-15);
    }

    #[test]
    fn large_sample_is_symmetric_and_bounded() {
        let a: Vec<f64> = (0..40).map(|i| ((i * 37) % 17) as f64).collect();
        let b: Vec<f64> = (0..40).map(|i| ((i * 11) % 13) as f64).collect();
        let ab = wilcoxon_signed_rank(&a, &b).unwrap();
        let ba = wilcoxon_signed_rank(&b, &a).unwrap();
        assert!(!ab.exact);
        assert!((0.0..=1.0).contains(&ab.p_value));
        assert_eq!(ab.p_value, ba.p_value);
        assert_eq!(ab.w, ba.w);
    }
}
