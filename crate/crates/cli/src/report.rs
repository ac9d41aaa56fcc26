//! Command reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use polyexp_core::arith::{format_rat, CycNum, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        let message = message.into();
        if !self.warnings.contains(&message) {
            self.warnings.push(message);
        }
    }

    pub fn to_json(&self) -> Value {
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| json!({ "name": t.name, "columns": t.columns, "rows": t.rows }))
            .collect();
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "tables": tables,
            "warnings": self.warnings,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            // serde_json maps are ordered by key, so output keys come out sorted
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "polyexp {}", self.command).unwrap();
        for (title, map) in [("inputs", &self.inputs), ("results", &self.results)] {
            if map.is_empty() {
                continue;
            }
            writeln!(out, "\n{title}").unwrap();
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, v) in map {
                writeln!(out, "  {k:<width$}  {}", cell(v)).unwrap();
            }
        }
        for t in &self.tables {
            writeln!(out, "\n{} ({} rows)", t.name, t.rows.len()).unwrap();
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain([t.columns[j].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |parts: &[String]| {
                let padded: Vec<String> = parts
                    .iter()
                    .zip(&widths)
                    .map(|(p, &w)| format!("{p:<w$}"))
                    .collect();
                format!("  {}", padded.join("  ").trim_end())
            };
            writeln!(out, "{}", line(&t.columns)).unwrap();
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            writeln!(out, "{}", line(&rule)).unwrap();
            for r in &cells {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        if !self.warnings.is_empty() {
            writeln!(out, "\nwarnings").unwrap();
            for w in &self.warnings {
                writeln!(out, "  - {w}").unwrap();
            }
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("({})", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn rat(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rats(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

pub fn ints<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

/// Power-basis coordinates of a cyclotomic number.
pub fn cyc(c: &CycNum) -> Value {
    rats(c.coeffs())
}
