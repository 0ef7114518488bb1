//! Seeded train/test partitions.
//!
//! Randomness comes from SplitMix64: the state advances by
//! `0x9E3779B97F4A7C15` per draw and each output is the state passed through
//! `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) *
//! 0x94D049BB133111EB; z ^ (z >> 31)`. Permutations are Fisher-Yates
//! shuffles driven by that stream, so a seed reproduces the same partition
//! on every run of this crate.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    /// Share of samples sent to the first side, in `(0, 1)`.
    pub fraction: f64,
    pub seed: u64,
    pub stratified: bool,
}

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Size of the first side: `⌈fraction · n⌉`, with `fraction` read as the
/// decimal it was written as (so `0.3 · 10` is 3, not 4).
pub fn first_side_size(fraction: f64, n: usize) -> usize {
    let exact = fraction * n as f64;
    let rounded = exact.round();
    if (exact - rounded).abs() <= 1e-9 * exact.abs().max(1.0) {
        rounded as usize
    } else {
        exact.ceil() as usize
    }
}

fn by_class(labels: &[u32]) -> BTreeMap<u32, Vec<usize>> {
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        classes.entry(l).or_default().push(i);
    }
    classes
}

/// Splits `target` across groups proportionally to their sizes, largest
/// remainder first (ties to the earlier group). Each group receives the floor
/// or the ceiling of its exact share.
fn apportion(sizes: &[usize], target: usize) -> Vec<usize> {
    let total: usize = sizes.iter().sum();
    let mut quota: Vec<usize> = sizes.iter().map(|&s| s * target / total).collect();
    let mut remainders: Vec<(usize, usize)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (s * target % total, i))
        .collect();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let missing = target - quota.iter().sum::<usize>();
    for &(_, i) in remainders.iter().take(missing) {
        quota[i] += 1;
    }
    quota
}

/// Row indices of the two sides, each in ascending order.
pub fn split_indices(labels: &[u32], spec: &SplitSpec) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = labels.len();
    if !(spec.fraction > 0.0 && spec.fraction < 1.0) {
        return Err(Error::Split(format!("fraction {} is not in (0, 1)", spec.fraction)));
    }
    if n < 2 {
        return Err(Error::Split(format!("cannot split {n} sample(s)")));
    }
    let k = first_side_size(spec.fraction, n);
    if k == 0 || k >= n {
        return Err(Error::Split(format!(
            "fraction {} of {n} samples leaves one side empty",
            spec.fraction
        )));
    }
    let mut rng = rng(spec.seed);
    let mut first = Vec::with_capacity(k);
    let mut second = Vec::with_capacity(n - k);
    if spec.stratified {
        let classes = by_class(labels);
        if let Some((label, members)) = classes.iter().find(|(_, m)| m.len() < 2) {
            return Err(Error::Split(format!(
                "stratified split needs 2 samples per class; class {label} has {}",
                members.len()
            )));
        }
        let sizes: Vec<usize> = classes.values().map(Vec::len).collect();
        let quotas = apportion(&sizes, k);
        for (mut members, quota) in classes.into_values().zip(quotas) {
            members.shuffle(&mut rng);
            first.extend_from_slice(&members[..quota]);
            second.extend_from_slice(&members[quota..]);
        }
    } else {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        first.extend_from_slice(&order[..k]);
        second.extend_from_slice(&order[k..]);
    }
    first.sort_unstable();
    second.sort_unstable();
    Ok((first, second))
}

pub fn split(dataset: &Dataset, spec: &SplitSpec) -> Result<(Dataset, Dataset)> {
    let (a, b) = split_indices(&dataset.labels, spec)?;
    Ok((dataset.subset(&a), dataset.subset(&b)))
}

/// Partitions rows into `k` folds of near-equal size (stratified: each class
/// is dealt round-robin across folds). Folds are in ascending row order.
pub fn kfold_indices(labels: &[u32], k: usize, seed: u64, stratified: bool) -> Result<Vec<Vec<usize>>> {
    let n = labels.len();
    if k < 2 || k > n {
        return Err(Error::Split(format!("cannot make {k} folds from {n} samples")));
    }
    let mut rng = rng(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    let groups: Vec<Vec<usize>> = if stratified {
        by_class(labels).into_values().collect()
    } else {
        vec![(0..n).collect()]
    };
    for mut members in groups {
        members.shuffle(&mut rng);
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(fraction: f64, seed: u64, stratified: bool) -> SplitSpec {
        SplitSpec {
            fraction,
            seed,
            stratified,
        }
    }

    fn is_partition(n: usize, a: &[usize], b: &[usize]) -> bool {
        let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
        all.sort_unstable();
        all == (0..n).collect::<Vec<_>>()
    }

    #[test]
    fn half_split_sizes() {
        let labels = vec![1; 100];
        let (a, b) = split_indices(&labels, &spec(0.5, 3, false)).unwrap();
        assert_eq!((a.len(), b.len()), (50, 50));
        assert!(is_partition(100, &a, &b));
    }

    #[test]
    fn ceiling_of_the_decimal_fraction() {
        assert_eq!(first_side_size(0.3, 10), 3);
        assert_eq!(first_side_size(0.5, 7), 4);
        assert_eq!(first_side_size(0.1, 5), 1);
        assert_eq!(first_side_size(0.7, 10), 7);
    }

    #[test]
    fn same_seed_same_split() {
        let labels: Vec<u32> = (0..57).map(|i| 1 + i % 3).collect();
        for stratified in [false, true] {
            let s = spec(0.4, 99, stratified);
            assert_eq!(split_indices(&labels, &s).unwrap(), split_indices(&labels, &s).unwrap());
        }
        let a = split_indices(&labels, &spec(0.4, 1, false)).unwrap();
        let b = split_indices(&labels, &spec(0.4, 2, false)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn stratified_counts() {
        let labels: Vec<u32> = (0..100).map(|i| if i < 60 { 1 } else { 2 }).collect();
        for seed in 0..20 {
            let (a, b) = split_indices(&labels, &spec(0.5, seed, true)).unwrap();
            for side in [&a, &b] {
                let ones = side.iter().filter(|&&i| labels[i] == 1).count();
                let twos = side.len() - ones;
                assert!(ones.abs_diff(30) <= 1 && twos.abs_diff(20) <= 1);
            }
        }
    }

    #[test]
    fn degenerate_specs() {
        assert!(split_indices(&[1], &spec(0.5, 0, false)).is_err());
        assert!(split_indices(&[1, 1], &spec(1.0, 0, false)).is_err());
        assert!(split_indices(&[1, 1, 1], &spec(0.01, 0, false)).is_ok());
        assert!(split_indices(&[1; 10], &spec(0.99, 0, false)).is_err());
        assert!(split_indices(&[1, 1, 2], &spec(0.5, 0, true)).is_err());
    }

    #[test]
    fn apportion_hits_target() {
        assert_eq!(apportion(&[60, 40], 50), vec![30, 20]);
        assert_eq!(apportion(&[3, 3, 3], 4), vec![2, 1, 1]);
        assert_eq!(apportion(&[1, 1], 1).iter().sum::<usize>(), 1);
    }

    #[test]
    fn kfold_partitions() {
        let labels: Vec<u32> = (0..23).map(|i| 1 + i % 2).collect();
        let folds = kfold_indices(&labels, 5, 7, true).unwrap();
        let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..23).collect::<Vec<_>>());
        assert!(folds.iter().all(|f| f.len() == 4 || f.len() == 5));
        assert!(kfold_indices(&labels, 1, 0, false).is_err());
    }
}
