//! Dataset ingestion (UCR-style TSV) and result serialization (CSV).
//!
//! UCR format: one series per row; the first whitespace-separated field is
//! an integer-like class label, the rest are the values. All rows of a file
//! must have the same length.
//!
//! CSV output: UTF-8, LF line endings, '.' decimal separator, floats printed
//! with 12 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// A named collection of equal-length series.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: Vec<TimeSeries>,
    pub source: String,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn series_len(&self) -> usize {
        self.series.first().map_or(0, |s| s.len())
    }

    pub fn znormalize(&mut self) {
        for s in &mut self.series {
            s.znormalize();
        }
    }
}

/// Load a UCR-style TSV/whitespace file. Rows are 1-based in error messages.
pub fn load_ucr_tsv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());

    let mut series = Vec::new();
    let mut expected_len: Option<usize> = None;
    for (row_idx, line) in text.lines().enumerate() {
        let row = row_idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label_tok = fields.next().unwrap();
        let label = parse_label(label_tok).ok_or_else(|| Error::Parse {
            path: path.display().to_string(),
            row,
            msg: format!("column 1: '{label_tok}' is not an integer-like label"),
        })?;
        let mut values = Vec::new();
        for (col_idx, tok) in fields.enumerate() {
            let v: f64 = tok.parse().map_err(|_| Error::Parse {
                path: path.display().to_string(),
                row,
                msg: format!("column {}: '{tok}' is not a number", col_idx + 2),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    row,
                    msg: format!("column {}: non-finite value '{tok}'", col_idx + 2),
                });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                row,
                msg: "row has a label but no values".into(),
            });
        }
        match expected_len {
            None => expected_len = Some(values.len()),
            Some(len) if len != values.len() => {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    row,
                    msg: format!("ragged row: {} values, expected {len}", values.len()),
                });
            }
            _ => {}
        }
        series.push(TimeSeries::with_label(values, label)?);
    }
    if series.is_empty() {
        return Err(Error::Parse {
            path: path.display().to_string(),
            row: 0,
            msg: "file contains no series".into(),
        });
    }
    Ok(Dataset {
        name,
        series,
        source: path.display().to_string(),
    })
}

fn parse_label(tok: &str) -> Option<i64> {
    let v: f64 = tok.parse().ok()?;
    if v.is_finite() && v.fract() == 0.0 && v.abs() < i64::MAX as f64 {
        Some(v as i64)
    } else {
        None
    }
}

/// Write a dataset back out in UCR format (used by round-trip tests and for
/// exporting synthetic data).
pub fn write_ucr_tsv(path: impl AsRef<Path>, series: &[TimeSeries]) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    for s in series {
        let _ = write!(out, "{}", s.label().unwrap_or(0));
        for v in s.values() {
            // shortest exact representation, so loading restores the bits
            let _ = write!(out, "\t{v}");
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Load a plain series file: whitespace-separated values, no label.
pub fn load_series(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut values = Vec::new();
    for tok in text.split_whitespace() {
        let v: f64 = tok.parse().map_err(|_| Error::Parse {
            path: path.display().to_string(),
            row: 1,
            msg: format!("'{tok}' is not a number"),
        })?;
        values.push(v);
    }
    TimeSeries::new(values)
}

/// Format a float with 12 significant digits, trimming trailing zeros.
pub fn fmt_g(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_decimal(&format!("{v:.decimals$}"))
    } else {
        let s = format!("{v:.11e}");
        match s.split_once('e') {
            Some((mant, e)) => format!("{}e{e}", trim_decimal(mant)),
            None => s,
        }
    }
}

fn trim_decimal(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// A row type that can be serialized to the results CSV.
pub trait CsvRow {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Write header + rows. An empty row list produces a header-only file.
pub fn write_results_csv<R: CsvRow>(rows: &[R], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    out.push_str(&R::header().join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.fields().join(","));
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// One 1-NN benchmark result row.
#[derive(Debug, Clone)]
pub struct NnCsvRow {
    pub dataset: String,
    pub measure: String,
    pub bound: String,
    pub window: String,
    pub queries: usize,
    pub candidates: usize,
    pub pruned: usize,
    pub dp_calls: usize,
    pub pruning_ratio: f64,
    pub wall_ms: f64,
    pub speedup: f64,
    pub accuracy: f64,
}

impl CsvRow for NnCsvRow {
    fn header() -> &'static [&'static str] {
        &[
            "dataset",
            "measure",
            "bound",
            "window",
            "queries",
            "candidates",
            "pruned",
            "dp_calls",
            "pruning_ratio",
            "wall_ms",
            "speedup",
            "accuracy",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.dataset.clone(),
            self.measure.clone(),
            self.bound.clone(),
            self.window.clone(),
            self.queries.to_string(),
            self.candidates.to_string(),
            self.pruned.to_string(),
            self.dp_calls.to_string(),
            fmt_g(self.pruning_ratio),
            fmt_g(self.wall_ms),
            fmt_g(self.speedup),
            fmt_g(self.accuracy),
        ]
    }
}

/// One TLB result row.
#[derive(Debug, Clone)]
pub struct TlbCsvRow {
    pub dataset: String,
    pub measure: String,
    pub bound: String,
    pub tlb_mean: f64,
    pub tlb_min: f64,
    pub tlb_max: f64,
    pub pairs: usize,
}

impl CsvRow for TlbCsvRow {
    fn header() -> &'static [&'static str] {
        &[
            "dataset", "measure", "bound", "tlb_mean", "tlb_min", "tlb_max", "pairs",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.dataset.clone(),
            self.measure.clone(),
            self.bound.clone(),
            fmt_g(self.tlb_mean),
            fmt_g(self.tlb_min),
            fmt_g(self.tlb_max),
            self.pairs.to_string(),
        ]
    }
}

/// One DBSCAN label row.
#[derive(Debug, Clone)]
pub struct DbscanCsvRow {
    pub index: usize,
    pub label: i64,
    pub core: bool,
}

impl CsvRow for DbscanCsvRow {
    fn header() -> &'static [&'static str] {
        &["index", "label", "core"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.label.to_string(),
            (self.core as u8).to_string(),
        ]
    }
}
