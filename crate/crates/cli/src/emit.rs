//! Ordered record emission as JSON lines or CSV.

use crate::config::Format;
use serde_json::{Map, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
    B(bool),
    Null,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::I(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::B(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::S(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

/// Shortest representation that round-trips, as serde_json writes it.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite float")
    } else {
        v.to_string()
    }
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::F(v) if v.is_finite() => Value::from(*v),
            Cell::F(v) => Value::String(v.to_string()),
            Cell::I(v) => Value::from(*v),
            Cell::S(v) => Value::String(v.clone()),
            Cell::B(v) => Value::Bool(*v),
            Cell::Null => Value::Null,
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::F(v) => fmt_f64(*v),
            Cell::I(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(v) if v.contains([',', '"', '\n']) => format!("\"{}\"", v.replace('"', "\"\"")),
            Cell::S(v) => v.clone(),
            Cell::Null => String::new(),
        }
    }
}

/// A table with fixed columns. Rows keep insertion order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect();
                    writeln!(out, "{}", Value::Object(obj))?;
                }
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        t.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        let mut t = Table::new(&["label", "x", "ok"]);
        t.push(vec!["1(a)".into(), 0.1.into(), true.into()]);
        t.push(vec!["a,b".into(), 1e-300.into(), false.into()]);
        assert_eq!(
            render(&t, Format::Csv),
            "label,x,ok\n1(a),0.1,true\n\"a,b\",1e-300,false\n"
        );
        assert_eq!(
            render(&t, Format::Json),
            "{\"label\":\"1(a)\",\"x\":0.1,\"ok\":true}\n{\"label\":\"a,b\",\"x\":1e-300,\"ok\":false}\n"
        );
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), -4.5e-17, 1e22] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_f64(f64::NAN), "NaN");
    }
}
