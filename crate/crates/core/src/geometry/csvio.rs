use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Class, LabeledCloud, PointSet};
use crate::numfmt::fmt_sig;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CsvOptions {
    /// Zero-based index of the label column.
    pub label_column: usize,
    pub delimiter: u8,
    pub has_header: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            label_column: usize::MAX,
            delimiter: b',',
            has_header: false,
        }
    }
}

impl CsvOptions {
    /// Label in the last column.
    pub fn label_last(delimiter: u8, has_header: bool) -> Self {
        CsvOptions {
            label_column: usize::MAX,
            delimiter,
            has_header,
        }
    }
}

fn csv_err(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Reads a binary-labelled point cloud. Non-label columns become coordinates in
/// column order; `label_column == usize::MAX` means the last column. The two
/// label values are ordered numerically when both parse as numbers, otherwise
/// lexically, and the smaller one becomes class a.
pub fn load_csv(path: impl AsRef<Path>, opts: &CsvOptions) -> Result<LabeledCloud> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(opts.delimiter)
        .has_headers(opts.has_header)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_err(path, 0, e.to_string()))?;

    let mut coords = Vec::new();
    let mut raw_labels = Vec::new();
    let mut arity = None;
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            match e.kind() {
                csv::ErrorKind::UnequalLengths { .. } => csv_err(path, line, "ragged row"),
                _ => csv_err(path, line, e.to_string()),
            }
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let width = rec.len();
        arity.get_or_insert(width);
        if width < 2 {
            return Err(csv_err(path, line, "need at least one coordinate and a label"));
        }
        let label_col = if opts.label_column == usize::MAX {
            width - 1
        } else {
            opts.label_column
        };
        if label_col >= width {
            return Err(csv_err(path, line, format!("label column {label_col} out of range")));
        }
        for (c, field) in rec.iter().enumerate() {
            if c == label_col {
                raw_labels.push(field.to_string());
            } else {
                let x: f64 = field
                    .parse()
                    .map_err(|_| csv_err(path, line, format!("non-numeric coordinate {field:?}")))?;
                coords.push(x);
            }
        }
    }
    let Some(width) = arity else {
        return Err(csv_err(path, 0, "no data rows"));
    };

    let mut distinct: Vec<&String> = raw_labels.iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() > 2 {
        return Err(csv_err(path, 0, format!("more than two classes: {} distinct labels", distinct.len())));
    }
    if distinct.len() < 2 {
        return Err(csv_err(path, 0, "only one class present"));
    }
    let numeric: Option<Vec<f64>> = distinct.iter().map(|s| s.parse().ok()).collect();
    let first_is_a = match numeric {
        Some(v) => v[0] < v[1],
        None => true,
    };
    let a_label = if first_is_a { distinct[0] } else { distinct[1] }.clone();
    let labels = raw_labels
        .iter()
        .map(|l| if *l == a_label { Class::A } else { Class::B })
        .collect();
    LabeledCloud::new(PointSet::new(width - 1, coords)?, labels)
}

/// Writes coordinates followed by a `0`/`1` label column (class a is `0`).
pub fn write_csv(cloud: &LabeledCloud, path: impl AsRef<Path>, delimiter: u8, header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_path(path.as_ref())
        .map_err(|e| csv_err(path.as_ref(), 0, e.to_string()))?;
    let to_err = |e: csv::Error| csv_err(path.as_ref(), 0, e.to_string());
    if header {
        let mut h: Vec<String> = (0..cloud.dim()).map(|i| format!("x{i}")).collect();
        h.push("label".into());
        w.write_record(&h).map_err(to_err)?;
    }
    for (p, c) in cloud.points().iter().zip(cloud.labels()) {
        let mut row: Vec<String> = p.iter().map(|&x| fmt_sig(x)).collect();
        row.push(c.index().to_string());
        w.write_record(&row).map_err(to_err)?;
    }
    w.flush()?;
    Ok(())
}
