//! CSV and JSON writers.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::Format;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// CSV form. Floats keep 17 significant digits so they round-trip exactly.
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

/// One result file: a header and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Self { name: name.into(), columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: &Value) -> Value {
        json!({ "meta": meta, "columns": self.columns, "rows": self.rows })
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Writes every table in `format` plus the sidecars, returning the file names.
///
/// CSV tables get a shared `meta.json`; JSON tables carry `meta` inline.
pub fn write_outputs(
    dir: &Path,
    format: Format,
    tables: &[Table],
    meta: &Value,
    sidecars: &Map<String, Value>,
) -> Result<Vec<String>> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::new();
    for t in tables {
        let (name, body) = match format {
            Format::Csv => (format!("{}.csv", t.name), t.to_csv()),
            Format::Json => (format!("{}.json", t.name), pretty(&t.to_json(meta))),
        };
        write_file(&dir.join(&name), &body)?;
        written.push(name);
    }
    if format == Format::Csv {
        write_file(&dir.join("meta.json"), &pretty(&json!({ "meta": meta })))?;
        written.push("meta.json".into());
    }
    for (name, value) in sidecars {
        let name = format!("{name}.json");
        write_file(&dir.join(&name), &pretty(&json!({ "meta": meta, "grid": value })))?;
        written.push(name);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("echo", &["j", "L"]);
        t.push(vec![0.into(), 1.0.into()]);
        t.push(vec![1.into(), 0.1.into()]);
        assert_eq!(t.to_csv(), "j,L\n0,1.0000000000000000e0\n1,1.0000000000000001e-1\n");
        let back: f64 = "1.0000000000000001e-1".parse().unwrap();
        assert_eq!(back, 0.1);
    }

    #[test]
    fn json_mirrors_csv() {
        let mut t = Table::new("sff", &["j", "S"]);
        t.push(vec![3.into(), 2.5.into()]);
        let v = t.to_json(&json!({"version": "x"}));
        assert_eq!(v["columns"], json!(["j", "S"]));
        assert_eq!(v["rows"], json!([[3, 2.5]]));
        assert_eq!(v["meta"]["version"], "x");
    }
}
