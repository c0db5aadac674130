//! Tabular reports rendered as CSV or JSON.

use serde_json::{json, Value};
use sobspec_core::scalar::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Rational(Rational),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// CSV text: 17 significant digits for floats, `p/q` for rationals.
    pub fn to_csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Rational(r) => format_rational(r),
            Cell::Text(t) => t.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(format_float(*v)),
            Cell::Rational(r) => json!(format_rational(r)),
            Cell::Text(t) => json!(t),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
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
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<Rational> for Cell {
    fn from(v: Rational) -> Self {
        Cell::Rational(v)
    }
}

/// `{:.16e}`; negative zero prints as zero.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        format!("{:.16e}", 0.0)
    } else if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Trailing notes, e.g. `trend: bounded-looking`; CSV prefixes each with `#`.
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            out.push('#');
            out.push_str(note);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
            .collect();
        let doc = json!({ "columns": self.columns, "rows": rows, "notes": self.notes });
        let mut s = serde_json::to_string_pretty(&doc).expect("tables serialize");
        s.push('\n');
        s
    }
}
