//! Tabular output as CSV (with a `# key: value` metadata preamble) or JSON.
//!
//! Floats are printed with 17 significant digits. Non-finite values never
//! reach the output: they become empty cells (`null` in JSON).

use std::io::Write;

use crate::args::Format;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i128),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn float(v: f64) -> Self {
        if v.is_finite() {
            Cell::Float(v)
        } else {
            Cell::Empty
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Float(v) if v.is_finite() => format_float(*v),
            Cell::Float(_) | Cell::Empty => String::new(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(v) if v.is_finite() => format_float(*v),
            Cell::Float(_) | Cell::Empty => "null".into(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => json_string(s),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::float(v)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

/// Scientific notation with 17 significant digits; valid as a JSON number.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization is infallible")
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), ..Self::default() }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn meta_float(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.meta(key, if value.is_finite() { format_float(value) } else { String::new() })
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let io = |e| CliError::io("cannot write output", e);
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}").map_err(io)?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush().map_err(io)?;
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let io = |e| CliError::io("cannot write output", e);
        let metadata = self
            .metadata
            .iter()
            .map(|(k, v)| format!("{}: {}", json_string(k), json_string(v)))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "{{\n  \"metadata\": {{{metadata}}},\n  \"rows\": [").map_err(io)?;
        for (i, row) in self.rows.iter().enumerate() {
            let fields = self
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| format!("{}: {}", json_string(c), v.json()))
                .collect::<Vec<_>>()
                .join(", ");
            let sep = if i + 1 == self.rows.len() { "" } else { "," };
            writeln!(out, "    {{{fields}}}{sep}").map_err(io)?;
        }
        writeln!(out, "  ]\n}}").map_err(io)?;
        out.flush().map_err(io)
    }
}
