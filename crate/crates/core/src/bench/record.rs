use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::distance::{DistanceId, KernelBackend};
use crate::error::{Error, Result};

/// One benchmark cell: a single fit/predict of one backend on one fold.
///
/// Skipped cells carry a reason and zero timings and accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub distance: DistanceId,
    pub backend: KernelBackend,
    pub run: usize,
    pub fold: usize,
    pub train_seconds: f64,
    pub predict_seconds: f64,
    pub accuracy: f64,
    pub skipped_reason: Option<String>,
}

impl BenchRecord {
    pub fn is_skipped(&self) -> bool {
        self.skipped_reason.is_some()
    }
}

/// Receives records as they are produced.
pub trait RecordSink {
    fn record(&mut self, record: &BenchRecord) -> Result<()>;
}

impl RecordSink for Vec<BenchRecord> {
    fn record(&mut self, record: &BenchRecord) -> Result<()> {
        self.push(record.clone());
        Ok(())
    }
}

/// Writes `records.csv` rows, flushing after each so a partial run stays
/// readable. Floats use the shortest representation that parses back exactly.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Self {
        CsvSink {
            writer: csv::Writer::from_writer(out),
        }
    }

    pub fn into_inner(self) -> Result<W> {
        self.writer
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }
}

fn csv_error(e: csv::Error) -> Error {
    let location = e
        .position()
        .map_or_else(|| "records".to_string(), |p| format!("line {}", p.line()));
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::parse(location, format!("{kind:?}")),
    }
}

impl<W: Write> RecordSink for CsvSink<W> {
    fn record(&mut self, record: &BenchRecord) -> Result<()> {
        self.writer.serialize(record).map_err(csv_error)?;
        self.writer.flush()?;
        Ok(())
    }
}

pub fn read_records<R: Read>(source: R) -> Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(source)
        .deserialize()
        .map(|r| r.map_err(csv_error))
        .collect()
}

pub fn records_to_csv(records: &[BenchRecord]) -> Result<Vec<u8>> {
    let mut sink = CsvSink::new(Vec::new());
    for r in records {
        sink.record(r)?;
    }
    sink.into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let records = vec![
            BenchRecord {
                dataset: "a, b".into(),
                distance: DistanceId::Euclidean,
                backend: KernelBackend::Optimized,
                run: 3,
                fold: 1,
                train_seconds: 0.1 + 0.2,
                predict_seconds: 1e-7 / 3.0,
                accuracy: 2.0 / 3.0,
                skipped_reason: None,
            },
            BenchRecord {
                dataset: "b".into(),
                distance: DistanceId::Canberra,
                backend: KernelBackend::Reference,
                run: 0,
                fold: 0,
                train_seconds: 0.0,
                predict_seconds: 0.0,
                accuracy: 0.0,
                skipped_reason: Some("domain error".into()),
            },
        ];
        let bytes = records_to_csv(&records).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with(
            "dataset,distance,backend,run,fold,train_seconds,predict_seconds,accuracy,skipped_reason\n"
        ));
        assert!(text.contains("0.30000000000000004"));
        assert_eq!(read_records(bytes.as_slice()).unwrap(), records);
    }

    #[test]
    fn bad_rows_are_located() {
        let text = "dataset,distance,backend,run,fold,train_seconds,predict_seconds,accuracy,skipped_reason\n\
                    a,euclidean,optimized,x,0,1,1,1,\n";
        assert!(matches!(read_records(text.as_bytes()), Err(Error::Parse { .. })));
    }
}
