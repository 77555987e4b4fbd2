//! Tabular CSV/JSON emission.
//!
//! Every table starts with a `schema_version` column. Floats are written in
//! scientific notation with 17 significant digits (non-finite values as
//! `NaN`/`inf` in CSV and `null` in JSON), so identical runs give
//! byte-identical files.

use std::io::{self, Write};
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::config::Format;

/// Bumped whenever a column is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // arbitrary_precision keeps the formatted digits verbatim
            Cell::Float(v) if v.is_finite() => Number::from_str(&format_float(*v)).map_or(Value::Null, Value::Number),
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Rows in grid order under a fixed header.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header = std::iter::once("schema_version").chain(self.columns.iter().copied());
        w.write_record(header).map_err(io::Error::other)?;
        for row in &self.rows {
            let fields = std::iter::once(SCHEMA_VERSION.to_string()).chain(row.iter().map(Cell::text));
            w.write_record(fields).map_err(io::Error::other)?;
        }
        w.flush()
    }

    fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                m.insert("schema_version".to_string(), Value::from(SCHEMA_VERSION));
                for (c, cell) in self.columns.iter().zip(row) {
                    m.insert(c.to_string(), cell.json());
                }
                Value::Object(m)
            })
            .collect();
        serde_json::to_writer_pretty(&mut out, &records).map_err(io::Error::other)?;
        out.write_all(b"\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["name", "value", "ok"]);
        t.push(vec!["a".into(), 0.1.into(), true.into()]);
        t.push(vec!["b,c".into(), f64::NAN.into(), Cell::Empty]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "schema_version,name,value,ok\n1,a,1.0000000000000001e-1,true\n1,\"b,c\",NaN,\n");
    }

    #[test]
    fn json_keeps_digits() {
        let mut buf = Vec::new();
        sample().write(Format::Json, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"value\": 1.0000000000000001e-1"), "{text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v[1]["value"], Value::Null);
        assert_eq!(v[0]["schema_version"], Value::from(1));
    }
}
