//! File formats: CSV datasets in and out, and the JSON result document.
//!
//! Dataset CSV: one row per point, d numeric fields then one label token,
//! comma-separated, no quoting. An optional header row is recognized by a
//! non-numeric first field. Blank lines are skipped. Coordinates are
//! written with shortest-roundtrip formatting, so write-then-read is
//! coordinate-identical.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::condense::{Provenance, RelevantSet};
use crate::geom::{LabeledDataset, Point};
use crate::{Error, Result, Tolerances};

pub fn ingest_csv(path: &Path) -> Result<LabeledDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_csv(&text)
}

/// Parses dataset CSV text. Line numbers in errors are 1-based file lines.
pub fn parse_csv(text: &str) -> Result<LabeledDataset> {
    let mut points: Vec<Point> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut rows: Vec<usize> = Vec::new(); // file line of each data row
    let mut seen: std::collections::HashMap<Vec<u64>, usize> = std::collections::HashMap::new();
    let mut dim: Option<usize> = None;
    let mut header_allowed = true;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if header_allowed {
            header_allowed = false;
            if fields[0].parse::<f64>().is_err() {
                continue; // header row
            }
        }
        if fields.len() < 2 {
            return Err(Error::Parse {
                line: lineno,
                column: 1,
                message: "expected at least one coordinate and a label".into(),
            });
        }
        let d = fields.len() - 1;
        match dim {
            None => dim = Some(d),
            Some(expected) if expected != d => {
                return Err(Error::Parse {
                    line: lineno,
                    column: fields.len(),
                    message: format!("row has {d} coordinates, expected {expected}"),
                });
            }
            _ => {}
        }
        let mut coords = Vec::with_capacity(d);
        for (k, field) in fields[..d].iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| Error::Parse {
                line: lineno,
                column: k + 1,
                message: format!("'{field}' is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    line: lineno,
                    column: k + 1,
                    message: format!("'{field}' is not finite"),
                });
            }
            coords.push(value);
        }
        let label = fields[d];
        if label.is_empty() {
            return Err(Error::Parse {
                line: lineno,
                column: fields.len(),
                message: "empty label".into(),
            });
        }
        let point = Point::new(coords)?;
        if let Some(&first) = seen.get(&point.key()) {
            return Err(Error::DuplicateRows {
                a: rows[first],
                b: lineno,
            });
        }
        seen.insert(point.key(), points.len());
        rows.push(lineno);
        points.push(point);
        labels.push(label.to_string());
    }
    LabeledDataset::new(points, labels)
}

/// Shortest-roundtrip CSV rendering of a dataset, no header.
pub fn dataset_to_csv(data: &LabeledDataset) -> String {
    let mut out = String::new();
    for i in 0..data.len() {
        for c in data.point(i).coords() {
            out.push_str(&format!("{c},"));
        }
        out.push_str(data.label_name(i));
        out.push('\n');
    }
    out
}

pub fn write_dataset_csv(data: &LabeledDataset, path: &Path) -> Result<()> {
    std::fs::write(path, dataset_to_csv(data)).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// One member of the result document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelevantEntry {
    pub index: usize,
    pub provenance: Provenance,
}

/// The condensation result document. Serialization is byte-stable: fields
/// in declaration order, indices ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub relevant: Vec<RelevantEntry>,
}

impl ResultDoc {
    pub fn new(data: &LabeledDataset, result: &RelevantSet, seed: u64, tol: &Tolerances) -> Self {
        ResultDoc {
            n: data.len(),
            d: data.dim(),
            k: result.len(),
            seed,
            tolerances: *tol,
            relevant: result
                .iter()
                .map(|(index, &provenance)| RelevantEntry { index, provenance })
                .collect(),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        self.relevant.iter().map(|e| e.index).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

pub fn emit_result(
    data: &LabeledDataset,
    result: &RelevantSet,
    seed: u64,
    tol: &Tolerances,
    path: &Path,
) -> Result<()> {
    let doc = ResultDoc::new(data, result, seed, tol);
    std::fs::write(path, doc.to_json()).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
