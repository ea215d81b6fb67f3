//! Delimited text files: comma- or tab-separated numbers, one point per row,
//! optional header line, optional integer label column.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeaderMode {
    /// Treat the first row as a header when any of its fields is not numeric.
    #[default]
    Auto,
    Present,
    Absent,
}

/// A column addressed by header name or by zero-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl std::str::FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub header: HeaderMode,
    pub label_column: Option<ColumnRef>,
    /// Field separator; detected from the first line when `None`.
    pub delimiter: Option<u8>,
}

pub fn load_delimited(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let delimiter = options.delimiter.unwrap_or_else(|| detect_delimiter(&text));
    let format_err = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(delimiter)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| format_err(format!("row {}: {e}", i + 1)))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let line = record.position().map_or(i as u64 + 1, |p| p.line()) as usize;
        records.push((line, record));
    }
    if records.is_empty() {
        return Err(format_err("file contains no rows".into()));
    }

    let first_is_header = match options.header {
        HeaderMode::Present => true,
        HeaderMode::Absent => false,
        HeaderMode::Auto => records[0].1.iter().any(|f| f.parse::<f64>().is_err()),
    };
    let header: Option<Vec<String>> = first_is_header
        .then(|| records.remove(0).1.iter().map(str::to_string).collect());
    if records.is_empty() {
        return Err(format_err("file contains a header but no data".into()));
    }

    let width = records[0].1.len();
    let label_idx = match &options.label_column {
        None => None,
        Some(ColumnRef::Index(i)) if *i < width => Some(*i),
        Some(ColumnRef::Index(i)) => {
            return Err(format_err(format!("label column {i} out of range (width {width})")))
        }
        Some(ColumnRef::Name(name)) => {
            let names = header
                .as_ref()
                .ok_or_else(|| format_err(format!("label column '{name}' needs a header row")))?;
            Some(
                names
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| format_err(format!("no column named '{name}'")))?,
            )
        }
    };
    let cols = width - usize::from(label_idx.is_some());
    if cols == 0 {
        return Err(format_err("no feature columns".into()));
    }

    let mut values = Vec::with_capacity(records.len() * cols);
    let mut labels = Vec::with_capacity(records.len());
    for (line, record) in &records {
        if record.len() != width {
            return Err(format_err(format!(
                "row {line} has {} fields, expected {width}",
                record.len()
            )));
        }
        for (j, field) in record.iter().enumerate() {
            let parse_err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                row: *line,
                column: j + 1,
                message,
            };
            if Some(j) == label_idx {
                labels.push(parse_label(field).ok_or_else(|| {
                    parse_err(format!("'{field}' is not an integer label"))
                })?);
            } else {
                let v: f64 = field
                    .parse()
                    .map_err(|_| parse_err(format!("'{field}' is not a number")))?;
                if !v.is_finite() {
                    return Err(parse_err(format!("'{field}' is not finite")));
                }
                values.push(v);
            }
        }
    }

    let mut data = Dataset::new(values, records.len(), cols)?;
    if label_idx.is_some() {
        data = data.with_labels(labels)?;
    }
    if let Some(mut names) = header {
        if let Some(i) = label_idx {
            names.remove(i);
        }
        data = data.with_feature_names(names)?;
    }
    Ok(data)
}

/// Writes the features, plus a trailing `label` column when ground truth is
/// attached. Values use the shortest representation that parses back to the
/// identical `f64`.
pub fn save_dataset(path: impl AsRef<Path>, x: &Dataset) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_dataset(x)).map_err(|e| Error::io(path, e))
}

/// The text `save_dataset` writes.
pub fn format_dataset(x: &Dataset) -> String {
    let mut out = String::new();
    let names: Vec<String> = match x.feature_names() {
        Some(n) => n.to_vec(),
        None => (1..=x.dims()).map(|j| format!("x{j}")).collect(),
    };
    out.push_str(&names.join(","));
    if x.labels().is_some() {
        out.push_str(",label");
    }
    out.push('\n');
    for (i, row) in x.rows().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").unwrap();
        }
        if let Some(labels) = x.labels() {
            write!(out, ",{}", labels[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// One integer per line, with an optional header line.
pub fn save_labels(path: impl AsRef<Path>, labels: &[usize], header: Option<&str>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::with_capacity(labels.len() * 3);
    if let Some(h) = header {
        out.push_str(h);
        out.push('\n');
    }
    for l in labels {
        writeln!(out, "{l}").unwrap();
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<Vec<i64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let field = line.trim();
        if field.is_empty() {
            continue;
        }
        match parse_label(field) {
            Some(l) => labels.push(l),
            None if labels.is_empty() && i == 0 => {}
            None => {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    row: i + 1,
                    column: 1,
                    message: format!("'{field}' is not an integer label"),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::Format {
            path: path.to_path_buf(),
            message: "no labels found".into(),
        });
    }
    Ok(labels)
}

fn detect_delimiter(text: &str) -> u8 {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.contains('\t') {
        b'\t'
    } else {
        b','
    }
}

fn parse_label(field: &str) -> Option<i64> {
    field.parse::<i64>().ok().or_else(|| {
        let v: f64 = field.parse().ok()?;
        (v.fract() == 0.0 && v.abs() < 9.0e15).then_some(v as i64)
    })
}
