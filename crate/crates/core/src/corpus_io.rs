//! Loading, saving, and splitting collections of post records.
//!
//! Two on-disk formats are understood:
//!
//! * JSONL, one object per line with keys `id`, `timestamp`, `text`,
//!   `dataset_tag` and an optional `label`;
//! * CSV with the header `id,timestamp,dataset_tag,label,text`, where an
//!   empty label field means "no gold label".

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveDateTime, SecondsFormat, Utc};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::sentiment::Sentiment;

/// One ingested social-media text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostRecord {
    pub id: String,
    pub timestamp: DateTime<Utc>,
    pub text: String,
    /// Name of the collection bucket, e.g. `2020-03-20_21`.
    pub dataset_tag: String,
    pub gold_label: Option<Sentiment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown post format {other:?} (expected jsonl or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Jsonl => "jsonl",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateId {
    pub id: String,
    pub lines: Vec<usize>,
}

impl fmt::Display for DuplicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.lines.iter().map(|l| l.to_string()).collect();
        write!(f, "{:?} (lines {})", self.id, lines.join(", "))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: empty id")]
    EmptyId { line: usize },
    #[error("line {line}: unparseable timestamp {value:?}")]
    Timestamp { line: usize, value: String },
    #[error("duplicate id(s): {}", display_duplicates(.0))]
    DuplicateIds(Vec<DuplicateId>),
    #[error("split ratio must lie strictly between 0 and 1, got {0}")]
    InvalidRatio(f64),
    #[error("cannot split {0} record(s); at least 2 are required")]
    TooFewRecords(usize),
    #[error("write failed: {0}")]
    Write(String),
}

fn display_duplicates(dups: &[DuplicateId]) -> String {
    dups.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Serialize, Deserialize)]
struct RawRecord {
    id: String,
    timestamp: String,
    #[serde(default)]
    text: String,
    dataset_tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Parses a timestamp leniently: RFC 3339, naive date-times (taken as UTC)
/// and bare dates (midnight UTC) are all accepted.
pub fn parse_timestamp(value: &str) -> Option<DateTime<Utc>> {
    let value = value.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(value) {
        return Some(dt.with_timezone(&Utc));
    }
    for fmt in [
        "%Y-%m-%dT%H:%M:%S%.f",
        "%Y-%m-%d %H:%M:%S%.f",
        "%Y-%m-%dT%H:%M",
        "%Y-%m-%d %H:%M",
    ] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(value, fmt) {
            return Some(naive.and_utc());
        }
    }
    NaiveDate::parse_from_str(value, "%Y-%m-%d")
        .ok()
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|naive| naive.and_utc())
}

fn format_timestamp(ts: &DateTime<Utc>) -> String {
    ts.to_rfc3339_opts(SecondsFormat::AutoSi, true)
}

fn into_record(raw: RawRecord, line: usize) -> Result<PostRecord, CorpusError> {
    if raw.id.is_empty() {
        return Err(CorpusError::EmptyId { line });
    }
    let timestamp = parse_timestamp(&raw.timestamp).ok_or_else(|| CorpusError::Timestamp {
        line,
        value: raw.timestamp.clone(),
    })?;
    let gold_label = match raw.label.as_deref() {
        None | Some("") => None,
        Some(label) => Some(label.parse::<Sentiment>().map_err(|_| CorpusError::UnknownLabel {
            line,
            label: label.to_string(),
        })?),
    };
    Ok(PostRecord {
        id: raw.id,
        timestamp,
        text: raw.text,
        dataset_tag: raw.dataset_tag,
        gold_label,
    })
}

fn from_record(record: &PostRecord) -> RawRecord {
    RawRecord {
        id: record.id.clone(),
        timestamp: format_timestamp(&record.timestamp),
        text: record.text.clone(),
        dataset_tag: record.dataset_tag.clone(),
        label: record.gold_label.map(|l| l.as_str().to_string()),
    }
}

/// Loads every record of `path` in file order.
pub fn load_posts(path: &Path, format: Format) -> Result<Vec<PostRecord>, CorpusError> {
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_posts(BufReader::new(file), format)
}

pub fn read_posts<R: Read>(reader: R, format: Format) -> Result<Vec<PostRecord>, CorpusError> {
    let with_lines = match format {
        Format::Jsonl => read_jsonl(reader)?,
        Format::Csv => read_csv(reader)?,
    };
    check_unique(&with_lines)?;
    Ok(with_lines.into_iter().map(|(_, r)| r).collect())
}

fn read_jsonl<R: Read>(reader: R) -> Result<Vec<(usize, PostRecord)>, CorpusError> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line).map_err(|e| CorpusError::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        out.push((line_no, into_record(raw, line_no)?));
    }
    Ok(out)
}

const CSV_HEADER: [&str; 5] = ["id", "timestamp", "dataset_tag", "label", "text"];

fn read_csv<R: Read>(reader: R) -> Result<Vec<(usize, PostRecord)>, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CorpusError::Parse {
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(CorpusError::Parse {
            line: 1,
            message: format!(
                "expected header {:?}, found {:?}",
                CSV_HEADER.join(","),
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for result in rdr.records() {
        let row = result.map_err(|e| CorpusError::Parse {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = row.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |i: usize| row.get(i).unwrap_or("").to_string();
        let raw = RawRecord {
            id: field(0),
            timestamp: field(1),
            dataset_tag: field(2),
            label: Some(field(3)),
            text: field(4),
        };
        out.push((line, into_record(raw, line)?));
    }
    Ok(out)
}

fn check_unique(records: &[(usize, PostRecord)]) -> Result<(), CorpusError> {
    let mut seen: HashMap<&str, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    for (line, rec) in records {
        let lines = seen.entry(rec.id.as_str()).or_default();
        if lines.is_empty() {
            order.push(rec.id.as_str());
        }
        lines.push(*line);
    }
    let dups: Vec<DuplicateId> = order
        .into_iter()
        .filter(|id| seen[id].len() > 1)
        .map(|id| DuplicateId {
            id: id.to_string(),
            lines: seen[id].clone(),
        })
        .collect();
    if dups.is_empty() {
        Ok(())
    } else {
        Err(CorpusError::DuplicateIds(dups))
    }
}

pub fn save_posts(path: &Path, records: &[PostRecord], format: Format) -> Result<(), CorpusError> {
    let file = File::create(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_posts(&mut writer, records, format)?;
    writer.flush().map_err(|e| CorpusError::Write(e.to_string()))
}

pub fn write_posts<W: Write>(writer: W, records: &[PostRecord], format: Format) -> Result<(), CorpusError> {
    let werr = |e: &dyn fmt::Display| CorpusError::Write(e.to_string());
    match format {
        Format::Jsonl => {
            let mut writer = writer;
            for rec in records {
                let line = serde_json::to_string(&from_record(rec)).map_err(|e| werr(&e))?;
                writeln!(writer, "{line}").map_err(|e| werr(&e))?;
            }
        }
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(writer);
            wtr.write_record(CSV_HEADER).map_err(|e| werr(&e))?;
            for rec in records {
                let raw = from_record(rec);
                let label = raw.label.unwrap_or_default();
                wtr.write_record([&raw.id, &raw.timestamp, &raw.dataset_tag, &label, &raw.text])
                    .map_err(|e| werr(&e))?;
            }
            wtr.flush().map_err(|e| werr(&e))?;
        }
    }
    Ok(())
}

/// A random train/test partition of a record collection.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSplit {
    pub train: Vec<PostRecord>,
    pub test: Vec<PostRecord>,
    pub seed: u64,
    pub ratio: f64,
}

/// Number of training records for `total` items: `ratio * total` rounded
/// half-up.
pub fn train_size(total: usize, ratio: f64) -> usize {
    ((ratio * total as f64) + 0.5).floor() as usize
}

/// Shuffles `records` uniformly with a ChaCha stream seeded by `seed`, then
/// cuts the permutation into a training prefix and a test suffix.
pub fn split_train_test(records: &[PostRecord], ratio: f64, seed: u64) -> Result<DatasetSplit, CorpusError> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(CorpusError::InvalidRatio(ratio));
    }
    if records.len() < 2 {
        return Err(CorpusError::TooFewRecords(records.len()));
    }
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let cut = train_size(records.len(), ratio).min(records.len());
    let pick = |idx: &[usize]| idx.iter().map(|&i| records[i].clone()).collect::<Vec<_>>();
    Ok(DatasetSplit {
        train: pick(&order[..cut]),
        test: pick(&order[cut..]),
        seed,
        ratio,
    })
}
