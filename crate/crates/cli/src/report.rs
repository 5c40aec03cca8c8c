//! Tabular reports and their CSV, JSON and plain-text encodings.

use std::io::Write;

use anyhow::Result;
use hypersphere_core::Verdict;
use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// Reals carry 17 significant digits so that they round-trip.
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) if v.is_finite() => format!("{v:.16e}"),
            Cell::Real(v) if v.is_nan() => "nan".into(),
            Cell::Real(v) => if *v > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            // serde_json maps non-finite floats to null.
            Cell::Real(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(i64::try_from(v).expect("integer column fits in i64"))
            }
        }
    )*};
}
int_cell!(u32, u64, usize, i64);

/// The `lhs, rhs, margin, numeric_error, status` columns of a verdict row.
pub fn verdict_cells(v: &Verdict) -> [Cell; 5] {
    [
        v.lhs.into(),
        v.rhs.into(),
        v.margin.into(),
        v.numeric_error.into(),
        v.status.as_str().into(),
    ]
}

/// Outcome of a command, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Ok,
    Inconclusive,
    Unexpected,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Unexpected => 2,
            Outcome::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Key/value lines such as the first failing cell.
    pub summary: Vec<(String, Cell)>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: Vec<&'static str>) -> Self {
        Report {
            command: command.into(),
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            outcome: Outcome::Ok,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<Cell>) {
        self.summary.push((key.into(), value.into()));
    }

    pub fn flag(&mut self, outcome: Outcome) {
        self.outcome = self.outcome.max(outcome);
    }

    /// Flags every row whose `status` cell differs from `expected`;
    /// inconclusive rows are already flagged separately.
    pub fn expect_status(&mut self, expected: &str) {
        let Some(col) = self.columns.iter().position(|&c| c == "status") else {
            return;
        };
        let mismatch = self.rows.iter().any(|row| match &row[col] {
            Cell::Text(s) => s != expected && s != "inconclusive",
            _ => true,
        });
        if mismatch {
            self.flag(Outcome::Unexpected);
        }
    }

    /// Writes the data encoding. For CSV the summary goes to `side`, so the
    /// data stream keeps a single header row.
    pub fn write(
        &self,
        format: Format,
        meta: &Metadata,
        out: &mut dyn Write,
        side: &mut dyn Write,
    ) -> Result<()> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render))?;
                }
                w.flush()?;
                for (k, v) in &self.summary {
                    writeln!(side, "{k}: {}", v.render())?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| ((*c).to_string(), v.to_json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let summary: Map<String, Value> = self
                    .summary
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_json()))
                    .collect();
                let doc = json!({
                    "metadata": {
                        "tool": meta.tool,
                        "version": meta.version,
                        "command": self.command,
                        "tol": meta.tol,
                        "seed": meta.seed,
                    },
                    "columns": self.columns,
                    "rows": rows,
                    "summary": summary,
                    "outcome": format!("{:?}", self.outcome).to_lowercase(),
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
            Format::Table => {
                let rendered: Vec<Vec<String>> = self
                    .rows
                    .iter()
                    .map(|r| r.iter().map(Cell::render).collect())
                    .collect();
                let widths: Vec<usize> = self
                    .columns
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        rendered
                            .iter()
                            .map(|r| r[i].len())
                            .fold(c.len(), usize::max)
                    })
                    .collect();
                let line = |cells: &mut dyn Iterator<Item = &str>| {
                    cells
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(&mut self.columns.iter().copied()))?;
                for row in &rendered {
                    writeln!(out, "{}", line(&mut row.iter().map(String::as_str)))?;
                }
                for (k, v) in &self.summary {
                    writeln!(out, "{k}: {}", v.render())?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub tol: f64,
    pub seed: u64,
}
