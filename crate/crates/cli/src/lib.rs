//! Report assembly for the `fakeherm` command line: every command builds
//! tables, compares them with the golden snapshot and collects cell diffs.

pub mod commands;

use std::fmt::Write as _;
use std::path::PathBuf;

use fakeherm_core::NumericConfig;
use serde::Serialize;
use serde_json::{Map, Value};

pub const MIN_PRECISION_BITS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

/// Everything a command needs besides its own flags.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub data_dir: PathBuf,
    pub numeric: NumericConfig,
    /// Places over primes up to this bound are searched explicitly.
    pub prime_cap: u64,
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: missing files, unreadable snapshots, invalid flags.
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.numeric.precision_bits < MIN_PRECISION_BITS {
            return Err(CliError::Input(format!(
                "--precision-bits must be at least {MIN_PRECISION_BITS}, got {}",
                self.numeric.precision_bits
            )));
        }
        if self.prime_cap < 2 || self.numeric.den_cap == 0 {
            return Err(CliError::Input("caps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(c, v)| (c.clone(), Value::String(v.clone()))).collect();
                Value::Object(m)
            })
            .collect();
        serde_json::json!({ "title": self.title, "rows": rows })
    }
}

/// A computed cell that disagrees with the golden snapshot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub table: String,
    pub row: String,
    pub column: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub tables: Vec<Table>,
    pub diffs: Vec<Diff>,
    pub notes: Vec<String>,
    /// Extra top-level JSON members.
    pub json: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn diff(&mut self, table: &str, row: &str, column: &str, expected: impl ToString, got: impl ToString) {
        self.diffs.push(Diff {
            table: table.into(),
            row: row.into(),
            column: column.into(),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    /// 0 when every pinned cell matches, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.diffs.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Tsv => self.render_tsv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for r in &t.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| -> String {
                let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                parts.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "== {} ==", t.title);
            let _ = writeln!(out, "{}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(out, "{}", line(r));
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        for d in &self.diffs {
            let _ = writeln!(out, "MISMATCH {} / {} / {}: expected {}, got {}", d.table, d.row, d.column, d.expected, d.got);
        }
        if self.diffs.is_empty() {
            out.push_str("all pinned cells match\n");
        } else {
            let _ = writeln!(out, "{} pinned cell(s) differ", self.diffs.len());
        }
        out
    }

    fn render_tsv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "# {}", t.title);
            let _ = writeln!(out, "{}", t.columns.join("\t"));
            for r in &t.rows {
                let _ = writeln!(out, "{}", r.join("\t"));
            }
        }
        for d in &self.diffs {
            let _ = writeln!(out, "# mismatch\t{}\t{}\t{}\t{}\t{}", d.table, d.row, d.column, d.expected, d.got);
        }
        out
    }

    fn render_json(&self) -> String {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("tables".into(), Value::Array(self.tables.iter().map(Table::to_json).collect()));
        m.insert("notes".into(), serde_json::to_value(&self.notes).expect("strings"));
        m.insert("diffs".into(), serde_json::to_value(&self.diffs).expect("plain data"));
        for (k, v) in &self.json {
            m.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("valid json");
        s.push('\n');
        s
    }
}
