use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::record::{records_to_csv, BenchRecord};
use super::wilcoxon::wilcoxon_signed_rank;
use crate::distance::{DistanceId, KernelBackend};
use crate::error::{Error, Result};

/// Means over the completed cells of one backend, summed in record order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BackendStats {
    pub n: usize,
    pub mean_train_seconds: f64,
    pub mean_predict_seconds: f64,
    pub mean_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub dataset: String,
    pub distance: DistanceId,
    pub w_statistic: f64,
    pub p_value: f64,
    /// The test failed to reject equal training times: `p_value >= alpha`.
    pub equivalent: bool,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marking {
    None,
    Optimized,
    Reference,
    /// Statistically equivalent: both backends are marked.
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub dataset: String,
    pub distance: DistanceId,
    pub optimized: Option<BackendStats>,
    pub reference: Option<BackendStats>,
    pub verdict: Option<EquivalenceVerdict>,
    /// Why there is no verdict, if there is none.
    pub note: Option<String>,
}

impl SummaryRow {
    pub fn marking(&self) -> Marking {
        let (Some(opt), Some(re)) = (self.optimized, self.reference) else {
            return Marking::None;
        };
        if self.verdict.as_ref().is_some_and(|v| v.equivalent) {
            return Marking::Both;
        }
        if opt.mean_train_seconds < re.mean_train_seconds {
            Marking::Optimized
        } else if re.mean_train_seconds < opt.mean_train_seconds {
            Marking::Reference
        } else {
            Marking::None
        }
    }

    /// `optimized [reference]` mean training seconds.
    pub fn cell(&self) -> String {
        format!(
            "{} [{}]",
            seconds(self.optimized.map(|s| s.mean_train_seconds)),
            seconds(self.reference.map(|s| s.mean_train_seconds))
        )
    }

    /// Replaces the verdict, e.g. to render a known outcome.
    pub fn set_verdict(&mut self, verdict: EquivalenceVerdict) {
        self.note = None;
        self.verdict = Some(verdict);
    }
}

fn seconds(v: Option<f64>) -> String {
    match v {
        None => "-".to_string(),
        Some(v) if v != 0.0 && v.abs() < 1e-3 => format!("{v:.3e}"),
        Some(v) => format!("{v:.3}"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub alpha: f64,
    pub rows: Vec<SummaryRow>,
}

fn stats<'a>(records: impl Iterator<Item = &'a BenchRecord>) -> Option<BackendStats> {
    let (mut n, mut train, mut predict, mut accuracy) = (0usize, 0.0, 0.0, 0.0);
    for r in records {
        n += 1;
        train += r.train_seconds;
        predict += r.predict_seconds;
        accuracy += r.accuracy;
    }
    (n > 0).then(|| BackendStats {
        n,
        mean_train_seconds: train / n as f64,
        mean_predict_seconds: predict / n as f64,
        mean_accuracy: accuracy / n as f64,
    })
}

/// Groups completed records by (dataset, distance), in order of first
/// appearance, and tests each group's paired training times with the
/// Wilcoxon signed-rank test. Pairs are matched on (run, fold).
pub fn summarize(records: &[BenchRecord], alpha: f64) -> Result<Summary> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Parameter(format!("alpha must be in (0, 1), got {alpha}")));
    }
    let mut order: Vec<(String, DistanceId)> = Vec::new();
    let mut groups: HashMap<(String, DistanceId), Vec<&BenchRecord>> = HashMap::new();
    for r in records.iter().filter(|r| !r.is_skipped()) {
        let key = (r.dataset.clone(), r.distance);
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(r);
    }
    if order.is_empty() {
        return Err(Error::EmptySummary);
    }
    let rows = order
        .into_iter()
        .map(|key| {
            let group = &groups[&key];
            let of = |b: KernelBackend| group.iter().copied().filter(move |r| r.backend == b);
            let mut paired: BTreeMap<(usize, usize), [Option<f64>; 2]> = BTreeMap::new();
            for r in group {
                let slot = usize::from(r.backend == KernelBackend::Reference);
                paired.entry((r.run, r.fold)).or_default()[slot] = Some(r.train_seconds);
            }
            let (a, b): (Vec<f64>, Vec<f64>) = paired
                .values()
                .filter_map(|[o, r]| Some(((*o)?, (*r)?)))
                .unzip();
            let (verdict, note) = match wilcoxon_signed_rank(&a, &b) {
                Ok(w) => (
                    Some(EquivalenceVerdict {
                        dataset: key.0.clone(),
                        distance: key.1,
                        w_statistic: w.w,
                        p_value: w.p_value,
                        equivalent: w.p_value >= alpha,
                        alpha,
                    }),
                    None,
                ),
                Err(e) => (None, Some(e.to_string())),
            };
            SummaryRow {
                optimized: stats(of(KernelBackend::Optimized)),
                reference: stats(of(KernelBackend::Reference)),
                dataset: key.0,
                distance: key.1,
                verdict,
                note,
            }
        })
        .collect();
    Ok(Summary { alpha, rows })
}

/// How the runs were produced, stated at the top of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportHeader {
    pub runs: usize,
    pub folds: usize,
    pub stratified: bool,
    pub base_seed: u64,
    pub strict_domain: bool,
}

#[derive(Serialize)]
struct SummaryCsvRow<'a> {
    dataset: &'a str,
    distance: DistanceId,
    optimized_n: Option<usize>,
    optimized_mean_train_seconds: Option<f64>,
    optimized_mean_predict_seconds: Option<f64>,
    optimized_mean_accuracy: Option<f64>,
    reference_n: Option<usize>,
    reference_mean_train_seconds: Option<f64>,
    reference_mean_predict_seconds: Option<f64>,
    reference_mean_accuracy: Option<f64>,
    w_statistic: Option<f64>,
    p_value: Option<f64>,
    equivalent: Option<bool>,
    marked: &'static str,
}

impl Summary {
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.rows {
            let v = row.verdict.as_ref();
            w.serialize(SummaryCsvRow {
                dataset: &row.dataset,
                distance: row.distance,
                optimized_n: row.optimized.map(|s| s.n),
                optimized_mean_train_seconds: row.optimized.map(|s| s.mean_train_seconds),
                optimized_mean_predict_seconds: row.optimized.map(|s| s.mean_predict_seconds),
                optimized_mean_accuracy: row.optimized.map(|s| s.mean_accuracy),
                reference_n: row.reference.map(|s| s.n),
                reference_mean_train_seconds: row.reference.map(|s| s.mean_train_seconds),
                reference_mean_predict_seconds: row.reference.map(|s| s.mean_predict_seconds),
                reference_mean_accuracy: row.reference.map(|s| s.mean_accuracy),
                w_statistic: v.map(|v| v.w_statistic),
                p_value: v.map(|v| v.p_value),
                equivalent: v.map(|v| v.equivalent),
                marked: match row.marking() {
                    Marking::None => "",
                    Marking::Optimized => "optimized",
                    Marking::Reference => "reference",
                    Marking::Both => "both",
                },
            })
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        }
        w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }

    /// A Markdown table with aligned columns.
    pub fn to_markdown(&self, header: &ReportHeader) -> String {
        let mut out = String::from("# Training time: optimized vs reference kernels\n\n");
        let protocol = if header.folds == 2 {
            format!(
                "Each of {} runs draws a seeded 50/50 split (seed = {} XOR run) and trains on each half in turn, \
                 testing on the other, giving {} paired observations per backend.",
                header.runs,
                header.base_seed,
                header.runs * 2
            )
        } else {
            format!(
                "Each of {} runs performs seeded {}-fold cross-validation (seed = {} XOR run), \
                 giving {} paired observations per backend.",
                header.runs,
                header.folds,
                header.base_seed,
                header.runs * header.folds
            )
        };
        let _ = writeln!(out, "{protocol}");
        let _ = writeln!(
            out,
            "Splits are {}; kernels run in {} domain mode.\n",
            if header.stratified { "stratified by class" } else { "not stratified" },
            if header.strict_domain { "strict" } else { "lenient" }
        );
        let _ = writeln!(
            out,
            "Cells show mean training seconds as `optimized [reference]`. Bold marks the faster backend. \
             When a paired Wilcoxon signed-rank test on training times does not reject equality \
             (p >= {}), both are bold and the row is flagged `equivalent`.\n",
            self.alpha
        );

        let titles = ["dataset", "distance", "train s: optimized [reference]", "accuracy", "W", "p", "verdict"];
        let body: Vec<[String; 7]> = self.rows.iter().map(markdown_row).collect();
        let mut widths = titles.map(|t| t.chars().count());
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            format!("| {} |\n", padded.join(" | "))
        };
        out.push_str(&line(&titles.map(String::from)));
        out.push_str(&line(&widths.map(|w| "-".repeat(w))));
        for row in &body {
            out.push_str(&line(row));
        }
        out
    }
}

fn markdown_row(row: &SummaryRow) -> [String; 7] {
    let marking = row.marking();
    let bold = |s: String, on: bool| if on { format!("**{s}**") } else { s };
    let opt = bold(
        seconds(row.optimized.map(|s| s.mean_train_seconds)),
        matches!(marking, Marking::Optimized | Marking::Both),
    );
    let re = bold(
        seconds(row.reference.map(|s| s.mean_train_seconds)),
        matches!(marking, Marking::Reference | Marking::Both),
    );
    let accuracy = row
        .optimized
        .or(row.reference)
        .map_or_else(|| "-".to_string(), |s| format!("{:.3}", s.mean_accuracy));
    let (w, p, verdict) = match (&row.verdict, &row.note) {
        (Some(v), _) => (
            format!("{}", v.w_statistic),
            format!("{:.4}", v.p_value),
            if v.equivalent { "equivalent" } else { "different" }.to_string(),
        ),
        (None, note) => ("-".into(), "-".into(), note.clone().unwrap_or_default()),
    };
    [row.dataset.clone(), row.distance.to_string(), format!("{opt} [{re}]"), accuracy, w, p, verdict]
}

/// Writes `records.csv`, `summary.csv` and `summary.md` into `dir`.
pub fn write_report(dir: impl AsRef<Path>, records: &[BenchRecord], summary: &Summary, header: &ReportHeader) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("records.csv"), records_to_csv(records)?)?;
    write_summary(dir, summary, header)
}

/// Writes `summary.csv` and `summary.md` into `dir`.
pub fn write_summary(dir: impl AsRef<Path>, summary: &Summary, header: &ReportHeader) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("summary.csv"), summary.to_csv()?)?;
    std::fs::write(dir.join("summary.md"), summary.to_markdown(header))?;
    Ok(())
}
