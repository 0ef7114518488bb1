//! Readers and writers for the four dataset encodings.
//!
//! * text: one sample per line, `id label f1 f2 ... fF`, space separated.
//! * csv: the same columns, comma separated, no header row.
//! * json: `{"data": [{"id": 0, "label": 1, "features": [0.5, 0.25]}, ...]}`.
//! * opf: little-endian binary. A header of three `i32` (samples, classes,
//!   features), then per sample an `i32` id, an `i32` label and `features`
//!   `f32` values.
//!
//! Text encodings print each value with the shortest decimal that parses
//! back to the same `f64`, so writing is deterministic and lossless.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Cursor, Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use serde::{Deserialize, Serialize};

use super::{Dataset, Format};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// Reject blank lines and `#` comments in the text encodings instead of
    /// skipping them.
    pub strict: bool,
}

/// Loads a dataset, inferring the format from the extension unless `hint` is given.
pub fn load(path: impl AsRef<Path>, hint: Option<Format>) -> Result<Dataset> {
    load_with(path, hint, LoadOptions::default())
}

pub fn load_with(path: impl AsRef<Path>, hint: Option<Format>, options: LoadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let format = hint
        .or_else(|| Format::from_path(path))
        .ok_or_else(|| Error::Parameter(format!("cannot infer the format of {}", path.display())))?;
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })?;
    read(BufReader::new(file), format, options)
}

pub fn read<R: Read>(reader: R, format: Format, options: LoadOptions) -> Result<Dataset> {
    let mut dataset = match format {
        Format::Txt => read_delimited(BufReader::new(reader), None, options)?,
        Format::Csv => read_delimited(BufReader::new(reader), Some(','), options)?,
        Format::Json => read_json(reader)?,
        Format::Opf => read_opf(reader)?,
    };
    dataset.source_format = Some(format);
    Ok(dataset)
}

pub fn save(dataset: &Dataset, path: impl AsRef<Path>, format: Format) -> Result<()> {
    let bytes = to_bytes(dataset, format)?;
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(())
}

pub fn to_bytes(dataset: &Dataset, format: Format) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    write(dataset, &mut out, format)?;
    Ok(out)
}

pub fn write<W: Write>(dataset: &Dataset, mut out: W, format: Format) -> Result<()> {
    match format {
        Format::Txt => write_delimited(dataset, &mut out, ' '),
        Format::Csv => write_delimited(dataset, &mut out, ','),
        Format::Json => write_json(dataset, &mut out),
        Format::Opf => write_opf(dataset, &mut out),
    }
}

fn fmt_value(v: f64) -> String {
    format!("{v:?}")
}

fn assemble(
    ids: Vec<u32>,
    labels: Vec<u32>,
    features: Vec<Vec<f64>>,
    locate: impl Fn(usize) -> String,
) -> Result<Dataset> {
    Dataset::new(ids, labels, features).map_err(|e| match e {
        Error::Row { row, source } => Error::parse(locate(row), source.to_string()),
        other => Error::parse(locate(0), other.to_string()),
    })
}

fn read_delimited<R: BufRead>(reader: R, sep: Option<char>, options: LoadOptions) -> Result<Dataset> {
    let mut ids = Vec::new();
    let mut labels = Vec::new();
    let mut features = Vec::new();
    let mut lines = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = index + 1;
        let at = || format!("line {lineno}");
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            if options.strict {
                return Err(Error::parse(at(), "blank or comment line"));
            }
            continue;
        }
        let fields: Vec<&str> = match sep {
            Some(c) => trimmed.split(c).map(str::trim).collect(),
            None => trimmed.split_whitespace().collect(),
        };
        if fields.len() < 3 {
            return Err(Error::parse(at(), format!("expected `id label f1 ...`, found {} field(s)", fields.len())));
        }
        let id = fields[0]
            .parse::<u32>()
            .map_err(|e| Error::parse(format!("line {lineno}, field 1"), format!("bad id {:?}: {e}", fields[0])))?;
        let label = fields[1]
            .parse::<u32>()
            .map_err(|e| Error::parse(format!("line {lineno}, field 2"), format!("bad label {:?}: {e}", fields[1])))?;
        if label < 1 {
            return Err(Error::parse(format!("line {lineno}, field 2"), "labels are 1-based"));
        }
        let row = fields[2..]
            .iter()
            .enumerate()
            .map(|(j, f)| {
                f.parse::<f64>().map_err(|_| {
                    Error::parse(format!("line {lineno}, field {}", j + 3), format!("non-numeric feature {f:?}"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = features.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::parse(at(), format!("ragged row: {} features, expected {first}", row.len())));
            }
        }
        ids.push(id);
        labels.push(label);
        features.push(row);
        lines.push(lineno);
    }
    assemble(ids, labels, features, |row| format!("line {}", lines.get(row).copied().unwrap_or(1)))
}

fn write_delimited<W: Write>(dataset: &Dataset, out: &mut W, sep: char) -> Result<()> {
    let mut line = String::new();
    for i in 0..dataset.len() {
        line.clear();
        line.push_str(&dataset.ids[i].to_string());
        line.push(sep);
        line.push_str(&dataset.labels[i].to_string());
        for &v in &dataset.features[i] {
            if !v.is_finite() {
                return Err(Error::Conversion(format!("sample {} has a non-finite feature", dataset.ids[i])));
            }
            line.push(sep);
            line.push_str(&fmt_value(v));
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct JsonDataset {
    data: Vec<JsonSample>,
}

#[derive(Serialize, Deserialize)]
struct JsonSample {
    id: u32,
    label: u32,
    features: Vec<f64>,
}

fn read_json<R: Read>(reader: R) -> Result<Dataset> {
    let parsed: JsonDataset = serde_json::from_reader(reader)
        .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let mut ids = Vec::with_capacity(parsed.data.len());
    let mut labels = Vec::with_capacity(parsed.data.len());
    let mut features = Vec::with_capacity(parsed.data.len());
    for sample in parsed.data {
        ids.push(sample.id);
        labels.push(sample.label);
        features.push(sample.features);
    }
    assemble(ids, labels, features, |row| format!("data[{row}]"))
}

fn write_json<W: Write>(dataset: &Dataset, out: &mut W) -> Result<()> {
    if dataset.features.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Conversion("JSON cannot represent non-finite features".into()));
    }
    let doc = JsonDataset {
        data: (0..dataset.len())
            .map(|i| JsonSample {
                id: dataset.ids[i],
                label: dataset.labels[i],
                features: dataset.features[i].clone(),
            })
            .collect(),
    };
    serde_json::to_writer(&mut *out, &doc).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn read_opf<R: Read>(mut reader: R) -> Result<Dataset> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let total = bytes.len();
    let mut cur = Cursor::new(bytes);
    let eof = |cur: &Cursor<Vec<u8>>, what: &str| {
        Error::parse(format!("byte offset {}", cur.position()), format!("truncated file while reading {what}"))
    };
    let mut header = [0i32; 3];
    for (slot, name) in header.iter_mut().zip(["sample count", "class count", "feature count"]) {
        *slot = cur.read_i32::<LittleEndian>().map_err(|_| eof(&cur, name))?;
    }
    let [n_samples, n_classes, n_features] = header;
    if n_samples < 1 || n_classes < 1 || n_features < 1 {
        return Err(Error::parse(
            "header",
            format!("invalid header ({n_samples}, {n_classes}, {n_features})"),
        ));
    }
    let (n, f) = (n_samples as usize, n_features as usize);
    let expected = 12 + n as u64 * (8 + 4 * f as u64);
    if (total as u64) < expected {
        return Err(Error::parse(
            format!("byte offset {total}"),
            format!("truncated file: header announces {expected} bytes"),
        ));
    }
    if total as u64 > expected {
        return Err(Error::parse(
            format!("byte offset {expected}"),
            format!("{} trailing byte(s) after the last sample", total as u64 - expected),
        ));
    }
    let mut ids = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    let mut features = Vec::with_capacity(n);
    for _ in 0..n {
        let offset = cur.position();
        let id = cur.read_i32::<LittleEndian>().map_err(|_| eof(&cur, "id"))?;
        let label = cur.read_i32::<LittleEndian>().map_err(|_| eof(&cur, "label"))?;
        if id < 0 {
            return Err(Error::parse(format!("byte offset {offset}"), format!("negative id {id}")));
        }
        if label < 1 || label > n_classes {
            return Err(Error::parse(
                format!("byte offset {}", offset + 4),
                format!("label {label} outside 1..={n_classes}"),
            ));
        }
        let mut row = vec![0f32; f];
        cur.read_f32_into::<LittleEndian>(&mut row).map_err(|_| eof(&cur, "features"))?;
        ids.push(id as u32);
        labels.push(label as u32);
        features.push(row.into_iter().map(f64::from).collect());
    }
    let record = 8 + 4 * f;
    assemble(ids, labels, features, |row| format!("byte offset {}", 12 + row * record))
}

fn write_opf<W: Write>(dataset: &Dataset, out: &mut W) -> Result<()> {
    let to_i32 = |v: usize, what: &str| {
        i32::try_from(v).map_err(|_| Error::Conversion(format!("{what} {v} does not fit the .opf header")))
    };
    let mut buf = Vec::with_capacity(12 + dataset.len() * (8 + 4 * dataset.n_features()));
    buf.write_i32::<LittleEndian>(to_i32(dataset.len(), "sample count")?)?;
    buf.write_i32::<LittleEndian>(to_i32(dataset.n_classes() as usize, "class count")?)?;
    buf.write_i32::<LittleEndian>(to_i32(dataset.n_features(), "feature count")?)?;
    for i in 0..dataset.len() {
        buf.write_i32::<LittleEndian>(to_i32(dataset.ids[i] as usize, "id")?)?;
        buf.write_i32::<LittleEndian>(to_i32(dataset.labels[i] as usize, "label")?)?;
        for &v in &dataset.features[i] {
            let narrow = v as f32;
            if !narrow.is_finite() {
                return Err(Error::Conversion(format!(
                    "sample {} has feature {v} which is not a finite 32-bit value",
                    dataset.ids[i]
                )));
            }
            buf.write_f32::<LittleEndian>(narrow)?;
        }
    }
    out.write_all(&buf)?;
    Ok(())
}
