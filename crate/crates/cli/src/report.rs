//! Tabular reports rendered as CSV, JSON or aligned text.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::config::Format;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// A real number.
    Real(f64),
    /// A real number that may not apply.
    Opt(Option<f64>),
    /// A count or index.
    Int(u64),
    /// Free text.
    Text(String),
    /// A flag.
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Real(v) | Cell::Opt(Some(v)) => fmt_g17(*v),
            Cell::Opt(None) => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => csv_escape(s),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Real(v) | Cell::Opt(Some(v)) => format!("{v:.9}"),
            Cell::Opt(None) => "-".to_string(),
            Cell::Text(s) => s.clone(),
            other => other.csv(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Real(v) | Cell::Opt(Some(v)) => s.serialize_f64(*v),
            Cell::Opt(None) => s.serialize_none(),
            Cell::Int(v) => s.serialize_u64(*v),
            Cell::Text(t) => s.serialize_str(t),
            Cell::Bool(b) => s.serialize_bool(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Opt(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
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

/// Named columns and rows of cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Column names, in output order.
    pub columns: Vec<&'static str>,
    /// Rows, each as long as `columns`.
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    /// Empty table with the given header.
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    /// Appends a row.
    ///
    /// # Panics
    /// If the row length differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    /// Header plus one line per row, `\n`-terminated.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| cells.iter().map(|r| r[j].chars().count()).chain([self.columns[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |items: Vec<&str>| {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.columns.clone());
        for r in &cells {
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

struct Rows<'a>(&'a Table);
struct Row<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl Serialize for Rows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for r in &self.0.rows {
            seq.serialize_element(&Row(&self.0.columns, r))?;
        }
        seq.end()
    }
}

/// Finished command output.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// Subcommand name.
    pub command: &'static str,
    /// Every checked quantity passed.
    pub passed: bool,
    /// Result rows.
    pub table: Table,
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("command", self.command)?;
        m.serialize_entry("passed", &self.passed)?;
        m.serialize_entry("columns", &self.table.columns)?;
        m.serialize_entry("rows", &Rows(&self.table))?;
        m.end()
    }
}

impl Report {
    /// Encodes the report.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.to_text(),
        }
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `%.17g`: 17 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e17)`.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        strip_zeros(format!("{v:.decimals$}"))
    } else {
        let m = strip_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
