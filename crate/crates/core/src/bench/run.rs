use std::path::{Path, PathBuf};

use super::record::{BenchRecord, RecordSink};
use super::synthetic::{generate_synthetic, BlobSpec};
use crate::distance::{DistanceId, DomainMode, KernelBackend};
use crate::error::{Error, Result};
use crate::graph::Subgraph;
use crate::opf::{fit_with, FitOptions};
use crate::stream::{kfold_indices, load_with, split_indices, Dataset, Format, LoadOptions, SplitSpec};

/// Caps the worker pool used by a plan.
pub const THREADS_ENV: &str = "OPF_THREADS";

#[derive(Debug, Clone)]
pub enum DataSource {
    File(PathBuf),
    Synthetic(BlobSpec),
    Memory { name: String, dataset: Dataset },
}

impl DataSource {
    pub fn name(&self) -> String {
        match self {
            DataSource::File(path) => path
                .file_stem()
                .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned()),
            DataSource::Synthetic(spec) => format!("synthetic:{spec}"),
            DataSource::Memory { name, .. } => name.clone(),
        }
    }

    pub fn load(&self, strict: bool) -> Result<Dataset> {
        match self {
            DataSource::File(path) => load_with(path, None, LoadOptions { strict }),
            DataSource::Synthetic(spec) => generate_synthetic(spec),
            DataSource::Memory { dataset, .. } => Ok(dataset.clone()),
        }
    }

    /// `synthetic:<blob spec>`, a dataset file, or a directory whose files
    /// with a known extension are taken in name order.
    pub fn parse_arg(arg: &str) -> Result<Vec<DataSource>> {
        if let Some(spec) = arg.strip_prefix("synthetic:") {
            return Ok(vec![DataSource::Synthetic(spec.parse()?)]);
        }
        let path = Path::new(arg);
        if !path.is_dir() {
            return Ok(vec![DataSource::File(path.to_path_buf())]);
        }
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        files.retain(|p| p.is_file() && Format::from_path(p).is_some());
        files.sort();
        Ok(files.into_iter().map(DataSource::File).collect())
    }
}

#[derive(Debug, Clone)]
pub struct BenchPlan {
    pub datasets: Vec<DataSource>,
    pub distances: Vec<DistanceId>,
    pub backends: Vec<KernelBackend>,
    /// 2 means a seeded 50/50 split used in both directions; more means
    /// k-fold cross-validation.
    pub folds: usize,
    pub runs: usize,
    /// Run `r` splits with seed `base_seed ^ r`.
    pub base_seed: u64,
    pub strict_domain: bool,
    pub stratified: bool,
    /// Overrides [`THREADS_ENV`].
    pub threads: Option<usize>,
}

impl Default for BenchPlan {
    fn default() -> Self {
        BenchPlan {
            datasets: Vec::new(),
            distances: DistanceId::ALL.to_vec(),
            backends: KernelBackend::ALL.to_vec(),
            folds: 2,
            runs: 25,
            base_seed: 0,
            strict_domain: false,
            stratified: true,
            threads: None,
        }
    }
}

impl BenchPlan {
    pub fn planned_cells(&self) -> usize {
        self.datasets.len() * self.distances.len() * self.backends.len() * self.runs * self.folds
    }

    fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(Error::Parameter(format!("need at least 2 folds, got {}", self.folds)));
        }
        if self.runs == 0 || self.distances.is_empty() || self.backends.is_empty() {
            return Err(Error::Parameter("runs, distances and backends must be non-empty".into()));
        }
        Ok(())
    }

    fn thread_count(&self) -> Option<usize> {
        self.threads.or_else(|| {
            let raw = std::env::var(THREADS_ENV).ok()?;
            match raw.trim().parse::<usize>() {
                Ok(n) if n > 0 => Some(n),
                _ => {
                    log::warn!("ignoring {THREADS_ENV}={raw:?}");
                    None
                }
            }
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub planned: usize,
}

impl BenchOutcome {
    pub fn completed(&self) -> usize {
        self.records.iter().filter(|r| !r.is_skipped()).count()
    }

    pub fn skipped(&self) -> usize {
        self.records.len() - self.completed()
    }
}

/// Training/test row indices for one (run, fold).
pub fn partitions(
    labels: &[u32],
    folds: usize,
    seed: u64,
    stratified: bool,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    if folds == 2 {
        let spec = SplitSpec {
            fraction: 0.5,
            seed,
            stratified,
        };
        let (a, b) = split_indices(labels, &spec)?;
        return Ok(vec![(a.clone(), b.clone()), (b, a)]);
    }
    let parts = kfold_indices(labels, folds, seed, stratified)?;
    Ok((0..folds)
        .map(|f| {
            let mut train: Vec<usize> = parts
                .iter()
                .enumerate()
                .filter(|&(g, _)| g != f)
                .flat_map(|(_, p)| p.iter().copied())
                .collect();
            train.sort_unstable();
            (train, parts[f].clone())
        })
        .collect())
}

struct Fold {
    train: std::result::Result<Subgraph<f64>, String>,
    test_rows: Vec<Vec<f64>>,
    test_labels: Vec<u32>,
}

fn prepare(dataset: &Dataset, plan: &BenchPlan) -> Vec<std::result::Result<Vec<Fold>, String>> {
    (0..plan.runs)
        .map(|run| {
            let seed = plan.base_seed ^ run as u64;
            let parts = partitions(&dataset.labels, plan.folds, seed, plan.stratified).map_err(|e| e.to_string())?;
            Ok(parts
                .into_iter()
                .map(|(train, test)| {
                    let test_set = dataset.subset(&test);
                    Fold {
                        train: dataset.subset(&train).to_subgraph().map_err(|e| e.to_string()),
                        test_rows: test_set.features,
                        test_labels: test_set.labels,
                    }
                })
                .collect())
        })
        .collect()
}

fn measure(fold: &Fold, distance: DistanceId, backend: KernelBackend, options: FitOptions) -> Result<(f64, f64, f64), String> {
    let train = fold.train.clone()?;
    let model = fit_with(train, distance, backend, options).map_err(|e| e.to_string())?;
    let batch = model.predict_batch(&fold.test_rows, false).map_err(|e| e.to_string())?;
    let correct = batch
        .predictions
        .iter()
        .zip(&fold.test_labels)
        .filter(|(p, &l)| p.label == l)
        .count();
    let accuracy = correct as f64 / fold.test_labels.len() as f64;
    Ok((model.train_seconds(), batch.seconds, accuracy))
}

/// Runs every cell of the plan, handing each record to `sink` as soon as it
/// exists. Cells that fail (a domain violation in strict mode, a training
/// side missing a class, an unloadable dataset) become skip records, so the
/// record count always equals [`BenchPlan::planned_cells`].
///
/// Cells run one at a time; for a given dataset, distance, run and fold the
/// backends run back to back so slow drift affects both alike. Each
/// (dataset, distance, backend) gets one untimed warm-up fit first.
pub fn run_plan(plan: &BenchPlan, sink: &mut (dyn RecordSink + Send)) -> Result<BenchOutcome> {
    plan.validate()?;
    match plan.thread_count() {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Parameter(e.to_string()))?;
            pool.install(|| run_cells(plan, sink))
        }
        None => run_cells(plan, sink),
    }
}

fn run_cells(plan: &BenchPlan, sink: &mut (dyn RecordSink + Send)) -> Result<BenchOutcome> {
    let loaded: Vec<(String, Result<Dataset>)> = plan
        .datasets
        .iter()
        .map(|source| (source.name(), source.load(plan.strict_domain)))
        .collect();
    if loaded.iter().all(|(_, d)| d.is_err()) {
        for (name, d) in &loaded {
            if let Err(e) = d {
                log::error!("{name}: {e}");
            }
        }
        return Err(Error::EmptyPlan);
    }
    let mode = if plan.strict_domain {
        DomainMode::Strict
    } else {
        DomainMode::Lenient
    };
    let options = FitOptions { mode, precompute: false };
    let mut records = Vec::with_capacity(plan.planned_cells());
    let mut emit = |record: BenchRecord, records: &mut Vec<BenchRecord>| -> Result<()> {
        sink.record(&record)?;
        records.push(record);
        Ok(())
    };

    for (name, dataset) in loaded {
        let runs = match &dataset {
            Ok(d) => prepare(d, plan),
            Err(e) => {
                log::warn!("skipping dataset {name}: {e}");
                (0..plan.runs).map(|_| Err(format!("dataset failed to load: {e}"))).collect()
            }
        };
        for &distance in &plan.distances {
            if dataset.is_ok() {
                let warm = runs.iter().flatten().flatten().next();
                for &backend in &plan.backends {
                    if let Some(fold) = warm {
                        let _ = measure(fold, distance, backend, options);
                    }
                }
            }
            for (run, folds) in runs.iter().enumerate() {
                for fold in 0..plan.folds {
                    for &backend in &plan.backends {
                        let result = match folds {
                            Ok(folds) => measure(&folds[fold], distance, backend, options),
                            Err(e) => Err(e.clone()),
                        };
                        let mut record = BenchRecord {
                            dataset: name.clone(),
                            distance,
                            backend,
                            run,
                            fold,
                            train_seconds: 0.0,
                            predict_seconds: 0.0,
                            accuracy: 0.0,
                            skipped_reason: None,
                        };
                        match result {
                            Ok((train, predict, accuracy)) => {
                                record.train_seconds = train;
                                record.predict_seconds = predict;
                                record.accuracy = accuracy;
                            }
                            Err(reason) => {
                                log::debug!("{name}/{distance}/{backend} run {run} fold {fold}: {reason}");
                                record.skipped_reason = Some(reason);
                            }
                        }
                        emit(record, &mut records)?;
                    }
                }
            }
        }
    }
    Ok(BenchOutcome {
        records,
        planned: plan.planned_cells(),
    })
}
