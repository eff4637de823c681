//! Feature-record files: JSON lines and CSV.
//!
//! JSON lines carry one object per record,
//! `{"label":"A","source":"path","features":[...111 numbers...]}`, with
//! `null` for a missing label or source. CSV files start with the header
//! `label,f000,...,f110`. Numbers are written in their shortest form that
//! parses back to the identical `f64`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Jsonl,
    Csv,
}

impl RecordFormat {
    /// `.csv` selects CSV; every other extension means JSON lines.
    pub fn from_path(path: &Path) -> RecordFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => RecordFormat::Csv,
            _ => RecordFormat::Jsonl,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    source: Option<String>,
    features: Vec<f64>,
}

pub fn to_json_line(fv: &FeatureVector) -> String {
    let rec = JsonRecord {
        label: fv.label.clone(),
        source: fv.source.clone(),
        features: fv.values.clone(),
    };
    serde_json::to_string(&rec).expect("feature values are finite")
}

pub fn write_jsonl(records: &[FeatureVector]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&to_json_line(r));
        out.push('\n');
    }
    out
}

/// Parses JSON lines. For these files the error offset is the 1-based line number.
pub fn read_jsonl(text: &str) -> Result<Vec<FeatureVector>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: JsonRecord = serde_json::from_str(line)
            .map_err(|e| Error::parse(i + 1, format!("bad record: {e}")))?;
        if rec.features.len() != FEATURE_LEN {
            return Err(Error::parse(
                i + 1,
                format!(
                    "expected {FEATURE_LEN} features, found {}",
                    rec.features.len()
                ),
            ));
        }
        out.push(FeatureVector {
            values: rec.features,
            label: rec.label,
            source: rec.source,
        });
    }
    Ok(out)
}

fn format_number(v: f64) -> String {
    serde_json::Number::from_f64(v)
        .expect("feature values are finite")
        .to_string()
}

pub fn csv_header() -> Vec<String> {
    let mut fields = vec!["label".to_string()];
    fields.extend((0..FEATURE_LEN).map(|i| format!("f{i:03}")));
    fields
}

/// Header line plus one row per record. Sources are not stored in CSV.
pub fn write_csv(records: &[FeatureVector]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(csv_header()).expect("in-memory write");
    for r in records {
        let mut row = vec![r.label.clone().unwrap_or_default()];
        row.extend(r.values.iter().map(|&v| format_number(v)));
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::parse(line, format!("bad CSV: {e}"))
}

/// Parses CSV records. The error offset is the 1-based line number.
pub fn read_csv(text: &str) -> Result<Vec<FeatureVector>> {
    if text.trim().is_empty() {
        return Err(Error::parse(0, "empty input"));
    }
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    if r.headers()
        .map_err(csv_error)?
        .iter()
        .ne(csv_header().iter().map(String::as_str))
    {
        return Err(Error::parse(1, "unexpected CSV header"));
    }
    let mut out = Vec::new();
    for row in r.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() != FEATURE_LEN + 1 {
            return Err(Error::parse(
                line,
                format!("expected {} fields, found {}", FEATURE_LEN + 1, row.len()),
            ));
        }
        let values = row
            .iter()
            .skip(1)
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::parse(line, format!("bad number: {e}")))?;
        let label = (!row[0].is_empty()).then(|| row[0].to_string());
        out.push(FeatureVector {
            values,
            label,
            source: None,
        });
    }
    Ok(out)
}

pub fn read_records(text: &str, format: RecordFormat) -> Result<Vec<FeatureVector>> {
    match format {
        RecordFormat::Jsonl => read_jsonl(text),
        RecordFormat::Csv => read_csv(text),
    }
}

pub fn write_records(records: &[FeatureVector], format: RecordFormat) -> String {
    match format {
        RecordFormat::Jsonl => write_jsonl(records),
        RecordFormat::Csv => write_csv(records),
    }
}
