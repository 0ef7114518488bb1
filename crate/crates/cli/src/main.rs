use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use opf_core::bench::{self, BenchPlan, CsvSink, DataSource, ReportHeader};
use opf_core::opf::{fit_with, FitOptions};
use opf_core::stream::{self, Format, LoadOptions};
use opf_core::{DistanceId, DomainMode, KernelBackend, TrainedModel};

/// Optimum-path forest classifier with a catalog of distance measures.
#[derive(Parser)]
#[command(name = "opf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a classifier and save it as a JSON model.
    Train(TrainArgs),
    /// Label every sample of a dataset with a saved model.
    Predict(PredictArgs),
    /// Convert a dataset between txt, csv, json and opf.
    Convert(ConvertArgs),
    /// Time reference against optimized kernels and write a report.
    Bench(BenchArgs),
}

#[derive(Args)]
struct TrainArgs {
    #[arg(long)]
    input: PathBuf,
    /// Measure name (e.g. euclidean) or catalog code (e.g. D3).
    #[arg(long, default_value = "euclidean")]
    distance: DistanceId,
    #[arg(long, default_value = "optimized")]
    backend: KernelBackend,
    #[arg(long)]
    model: PathBuf,
    /// Reject out-of-domain inputs and malformed lines instead of adjusting
    /// or skipping them.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long)]
    input: PathBuf,
    /// One `id label` line per sample.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Output format; defaults to the output file's extension.
    #[arg(long)]
    to: Option<Format>,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Dataset file, directory of dataset files, or `synthetic:<spec>` such
    /// as `synthetic:classes=2,per_class=100,dim=2,separation=10`.
    /// Repeatable.
    #[arg(long, required = true)]
    data: Vec<String>,
    /// `all` or a comma-separated list of names or codes.
    #[arg(long, default_value = "all")]
    distances: String,
    /// `both`, `reference` or `optimized`.
    #[arg(long, default_value = "both")]
    backends: String,
    #[arg(long, default_value_t = 2)]
    folds: usize,
    #[arg(long, default_value_t = 25)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    strict: bool,
    /// Draw splits without preserving class proportions.
    #[arg(long)]
    no_stratify: bool,
    /// Worker threads (defaults to OPF_THREADS, then all cores).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value = "report")]
    out: PathBuf,
}

fn mode(strict: bool) -> DomainMode {
    if strict {
        DomainMode::Strict
    } else {
        DomainMode::Lenient
    }
}

fn train(args: TrainArgs) -> Result<()> {
    let data = stream::load_with(&args.input, None, LoadOptions { strict: args.strict })
        .with_context(|| format!("loading {}", args.input.display()))?;
    let options = FitOptions {
        mode: mode(args.strict),
        precompute: false,
    };
    let model: TrainedModel = fit_with(data.to_subgraph()?, args.distance, args.backend, options)?;
    model
        .save(&args.model)
        .with_context(|| format!("writing {}", args.model.display()))?;
    let prototypes = model.subgraph().prototypes().len();
    println!(
        "trained {} samples, {} classes, {} prototypes with {} ({}) in {:.4}s -> {}",
        data.len(),
        data.n_classes(),
        prototypes,
        args.distance,
        args.backend,
        model.train_seconds(),
        args.model.display()
    );
    Ok(())
}

fn predict(args: PredictArgs) -> Result<()> {
    let model = TrainedModel::load(&args.model)
        .with_context(|| format!("loading model {}", args.model.display()))?
        .with_mode(mode(args.strict));
    let data = stream::load_with(&args.input, None, LoadOptions { strict: args.strict })
        .with_context(|| format!("loading {}", args.input.display()))?;
    let batch = model.predict_batch(&data.features, false)?;
    let mut out = BufWriter::new(File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?);
    let mut correct = 0;
    for ((id, truth), p) in data.ids.iter().zip(&data.labels).zip(&batch.predictions) {
        writeln!(out, "{id} {}", p.label)?;
        correct += usize::from(p.label == *truth);
    }
    out.flush()?;
    println!(
        "predicted {} samples in {:.4}s; accuracy against file labels {:.4}",
        data.len(),
        batch.seconds,
        correct as f64 / data.len() as f64
    );
    Ok(())
}

fn convert(args: ConvertArgs) -> Result<()> {
    let report = stream::convert(&args.input, &args.out, args.to, LoadOptions { strict: args.strict })?;
    println!(
        "converted {} samples ({} features, {} classes) from {} to {}",
        report.samples, report.features, report.classes, report.from, report.to
    );
    Ok(())
}

fn parse_distances(arg: &str) -> Result<Vec<DistanceId>> {
    if arg.trim().eq_ignore_ascii_case("all") {
        return Ok(DistanceId::ALL.to_vec());
    }
    Ok(arg
        .split(',')
        .map(|s| s.trim().parse::<DistanceId>())
        .collect::<opf_core::Result<_>>()?)
}

fn parse_backends(arg: &str) -> Result<Vec<KernelBackend>> {
    match arg.trim().to_ascii_lowercase().as_str() {
        "both" | "all" => Ok(KernelBackend::ALL.to_vec()),
        other => Ok(vec![other.parse()?]),
    }
}

fn run_bench(args: BenchArgs) -> Result<()> {
    let mut datasets = Vec::new();
    for arg in &args.data {
        let found = DataSource::parse_arg(arg).with_context(|| format!("--data {arg}"))?;
        if found.is_empty() {
            bail!("--data {arg}: no dataset files found");
        }
        datasets.extend(found);
    }
    let plan = BenchPlan {
        datasets,
        distances: parse_distances(&args.distances)?,
        backends: parse_backends(&args.backends)?,
        folds: args.folds,
        runs: args.runs,
        base_seed: args.seed,
        strict_domain: args.strict,
        stratified: !args.no_stratify,
        threads: args.threads,
    };
    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let records_path = args.out.join("records.csv");
    let file = File::create(&records_path).with_context(|| format!("creating {}", records_path.display()))?;
    let mut sink = CsvSink::new(BufWriter::new(file));
    log::info!("running {} cells", plan.planned_cells());
    let outcome = bench::run_plan(&plan, &mut sink)?;
    sink.into_inner()?.flush()?;
    eprintln!(
        "{} cells: {} completed, {} skipped",
        outcome.planned,
        outcome.completed(),
        outcome.skipped()
    );
    let summary = bench::summarize(&outcome.records, args.alpha)?;
    let header = ReportHeader {
        runs: plan.runs,
        folds: plan.folds,
        stratified: plan.stratified,
        base_seed: plan.base_seed,
        strict_domain: plan.strict_domain,
    };
    bench::write_summary(&args.out, &summary, &header)?;
    print!("{}", summary.to_markdown(&header));
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Train(a) => train(a),
        Command::Predict(a) => predict(a),
        Command::Convert(a) => convert(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
