//! Benchmarking the reference kernels against the optimized ones: seeded
//! runs, per-cell records, paired significance tests and reports.

mod record;
mod run;
mod summary;
mod synthetic;
mod wilcoxon;

pub use record::{read_records, records_to_csv, BenchRecord, CsvSink, RecordSink};
pub use run::{partitions, run_plan, BenchOutcome, BenchPlan, DataSource, THREADS_ENV};
pub use summary::{
    summarize, write_report, write_summary, BackendStats, EquivalenceVerdict, Marking, ReportHeader, Summary,
    SummaryRow,
};
pub use synthetic::{generate_synthetic, BlobSpec};
pub use wilcoxon::{wilcoxon_signed_rank, WilcoxonResult, EXACT_LIMIT, MIN_PAIRS};
