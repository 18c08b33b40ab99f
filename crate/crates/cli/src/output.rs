//! Output formatting and atomic file writes.

use std::io::{self, Write};
use std::path::Path;

use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A CSV table. Numbers are written with 17 significant digits.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Two-column `key,value` table from the scalar leaves of a JSON object.
    pub fn from_json(value: &Value) -> Self {
        let mut t = Table::new(&["key", "value"]);
        flatten("", value, &mut t);
        t
    }

    pub fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_cell).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn flatten(prefix: &str, v: &Value, t: &mut Table) {
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, t);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}.{i}"), v, t);
            }
        }
        Value::Number(n) => {
            let cell = match n.as_i64() {
                Some(i) => Cell::Int(i),
                None => Cell::Num(n.as_f64().unwrap_or(f64::NAN)),
            };
            t.push(vec![prefix.into(), cell]);
        }
        Value::Bool(b) => t.push(vec![prefix.into(), (*b).into()]),
        Value::String(s) => t.push(vec![prefix.into(), s.clone().into()]),
        Value::Null => t.push(vec![prefix.into(), "".into()]),
    }
}

pub fn format_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn format_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) => format_num(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_num(0.1), "1.0000000000000001e-1");
        assert_eq!(format_num(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(format_num(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["t", "re", "im"]);
        t.push(vec![0.0.into(), 1.0.into(), (-0.5).into()]);
        let s = t.render();
        assert!(s.starts_with("t,re,im\n"));
        assert!(!s.contains('\r'));
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn json_flattening() {
        let v = serde_json::json!({"a": 1, "b": {"c": [0.5, true]}});
        let s = Table::from_json(&v).render();
        assert_eq!(
            s,
            "key,value\na,1\nb.c.0,5.0000000000000000e-1\nb.c.1,true\n"
        );
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
