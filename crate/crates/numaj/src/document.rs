//! A small tabular document and its three renderings.
//!
//! Tables print numbers to 6 significant digits, CSV uses the shortest
//! representation that parses back to the same `f64`, and JSON keeps full
//! precision as an array of row objects.

use std::fmt::Write as _;

use serde_json::{Map, Number, Value as Json};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// `%g`-style formatting with `digits` significant digits.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    // Rounding can carry into the next decade (9.999996 -> 10.0000).
    let sci = format!("{:.*e}", digits - 1, x);
    let exp = sci.rsplit_once('e').and_then(|(_, e)| e.parse::<i32>().ok()).unwrap_or(exp);
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let (mantissa, e) = sci.split_once('e').expect("scientific notation");
        let mantissa =
            if mantissa.contains('.') { mantissa.trim_end_matches('0').trim_end_matches('.') } else { mantissa };
        format!("{mantissa}e{e}")
    }
}

impl Cell {
    fn table_text(&self) -> String {
        match self {
            Cell::Num(x) => significant(*x, 6),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            other => other.table_text(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Num(x) => Number::from_f64(*x).map(Json::Number).unwrap_or(Json::Null),
            Cell::Int(n) => Json::from(*n),
            Cell::Bool(b) => Json::Bool(*b),
            Cell::Text(s) => Json::String(s.clone()),
        }
    }
}

impl Document {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Table => Ok(self.table()),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::table_text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| cells.iter().map(|r| r[c].chars().count()).chain([self.columns[c].len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let mut line = |fields: Vec<&str>| {
            let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(self.columns.clone());
        let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(rules.iter().map(String::as_str).collect());
        for r in &cells {
            line(r.iter().map(String::as_str).collect());
        }
        out
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let invariant = |e: csv::Error| CliError::Invariant(format!("csv encoding failed: {e}"));
        w.write_record(&self.columns).map_err(invariant)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv_text)).map_err(invariant)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Invariant(format!("csv encoding failed: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Invariant(e.to_string()))
    }

    fn json(&self) -> Result<String, CliError> {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Json> =
                    self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect();
                Json::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).map_err(|e| CliError::Invariant(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}
