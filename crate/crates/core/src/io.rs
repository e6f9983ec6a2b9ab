//! Matrix file formats: CSV (`n` rows of `n` decimals) and JSON
//! (`{"n": int, "dist": [[...]], "label": optional string}`).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub dist: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl From<&FiniteMetricSpace> for MatrixFile {
    fn from(x: &FiniteMetricSpace) -> Self {
        Self {
            n: x.len(),
            dist: x.to_rows(),
            label: x.label().map(str::to_owned),
        }
    }
}

impl TryFrom<MatrixFile> for FiniteMetricSpace {
    type Error = Error;

    fn try_from(file: MatrixFile) -> Result<Self> {
        if file.n != file.dist.len() {
            return Err(Error::Parse(format!(
                "declared n = {} but dist has {} rows",
                file.n,
                file.dist.len()
            )));
        }
        let space = FiniteMetricSpace::new(file.dist)?;
        Ok(match file.label {
            Some(l) => space.with_label(l),
            None => space,
        })
    }
}

pub fn parse_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("row {r}, column {c}: not a number: {field:?}"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_json(text: &str) -> Result<MatrixFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_space(text: &str) -> Result<FiniteMetricSpace> {
    let trimmed = text.trim_start();
    if trimmed.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    if trimmed.starts_with('{') {
        parse_json(trimmed)?.try_into()
    } else {
        FiniteMetricSpace::new(parse_csv(text)?)
    }
}

pub fn read_space(path: impl AsRef<Path>) -> Result<FiniteMetricSpace> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let space = parse_space(&text)?;
    if space.label().is_none() {
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            return Ok(space.with_label(stem));
        }
    }
    Ok(space)
}

/// Rows joined by commas, each value in shortest round-trip form.
pub fn to_csv(x: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    for i in 0..x.len() {
        let row: Vec<String> = x.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(x: &FiniteMetricSpace) -> String {
    serde_json::to_string(&MatrixFile::from(x)).expect("matrix serialization cannot fail")
}
