//! Deterministic table and JSON emission.
//!
//! Numbers use the shortest decimal that round-trips. Files of one command
//! are rendered in memory first and written together; if a write fails the
//! files already written by that batch are removed.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::config::Format;
use crate::error::{CliError, Result};

/// Shortest round-trip rendering; plain notation in `[1e-4, 1e15)`,
/// scientific otherwise.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) {
        let s = format!("{x}");
        if s.contains('.') {
            s
        } else {
            format!("{s}.0")
        }
    } else {
        format!("{x:e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_f64(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.clone()),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|c| csv_field(&c.render())).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        serde_json::json!({ "columns": self.columns, "rows": rows })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Rendered files waiting to be written under one directory.
#[derive(Debug, Default)]
pub struct Bundle {
    files: Vec<(PathBuf, String)>,
}

impl Bundle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a table as `<stem>.csv` or `<stem>.json`.
    pub fn table(&mut self, stem: &str, table: &Table, format: Format) {
        match format {
            Format::Csv => self.raw(format!("{stem}.csv"), table.to_csv()),
            Format::Json => self.raw(format!("{stem}.json"), json_text(&table.to_json())),
        }
    }

    pub fn json(&mut self, name: &str, value: &Value) {
        self.raw(name, json_text(value));
    }

    pub fn raw(&mut self, rel: impl Into<PathBuf>, text: String) {
        self.files.push((rel.into(), text));
    }

    /// Moves every file of `other` under the subdirectory `prefix`.
    pub fn nest(&mut self, prefix: impl AsRef<Path>, other: Bundle) {
        for (p, t) in other.files {
            self.files.push((prefix.as_ref().join(p), t));
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &Path> {
        self.files.iter().map(|(p, _)| p.as_path())
    }

    pub fn get(&self, rel: impl AsRef<Path>) -> Option<&str> {
        self.files
            .iter()
            .find(|(p, _)| p == rel.as_ref())
            .map(|(_, t)| t.as_str())
    }

    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let mut written: Vec<PathBuf> = Vec::new();
        for (rel, text) in &self.files {
            let path = dir.join(rel);
            let res = path
                .parent()
                .map_or(Ok(()), fs::create_dir_all)
                .and_then(|_| fs::write(&path, text));
            if let Err(e) = res {
                for p in &written {
                    let _ = fs::remove_file(p);
                }
                return Err(CliError::io(path, e));
            }
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [
            0.0,
            1.0,
            -2.5,
            1e-32,
            5.12e-32,
            1.0545718e-34,
            0.1 + 0.2,
            123456.789,
            1e300,
            3e-5,
        ] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(fmt_f64(1.0), "1.0");
        assert_eq!(fmt_f64(1e-32), "1e-32");
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_has_one_header() {
        let mut t = Table::new(&["n", "x"]);
        t.push(vec![Cell::Int(-1), Cell::Num(0.5)]);
        t.push(vec![Cell::Int(0), Cell::Text("a,b".into())]);
        assert_eq!(t.to_csv(), "n,x\n-1,0.5\n0,\"a,b\"\n");
    }

    #[test]
    fn failed_write_removes_batch() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("blocker"), "x").unwrap();
        let mut b = Bundle::new();
        b.raw("a.csv", "1\n".into());
        b.raw("blocker/b.csv", "2\n".into());
        let err = b.write(dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 4);
        assert!(!dir.path().join("a.csv").exists());
    }
}
