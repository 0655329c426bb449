//! Deterministic table output: CSV with a mandatory header, '.' decimals and
//! ',' separators, or JSON with a schema marker. Floats print with 17
//! significant digits so identical runs produce identical bytes.

use darboux::darboux::{EigenfunctionSpec, Parity, Period};
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One output cell; floats format with full precision.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Float(FullFloat),
    Int(i64),
    Bool(bool),
    Empty,
}

#[derive(Debug, Clone, Copy)]
pub struct FullFloat(pub f64);

impl Serialize for FullFloat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_float(self.0))
    }
}

pub fn format_float(x: f64) -> String {
    // Collapse negative zero so equal values always print identically.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

#[derive(Debug, Clone)]
pub struct Row {
    pub cells: Vec<Cell>,
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

fn period_str(p: Period) -> &'static str {
    match p {
        Period::TwoK => "2K",
        Period::FourK => "4K",
    }
}

impl Row {
    pub const SPECTRUM_HEADER: &'static [&'static str] =
        &["family", "N", "parity", "period", "arscott_ok", "energy", "residual"];
    pub const EIGENFUNCTION_HEADER: &'static [&'static str] = &["u", "psi", "ode_residual"];
    pub const CLASSIFY_HEADER: &'static [&'static str] =
        &["kind", "family", "N", "parity", "period", "arscott_ok", "boundary"];

    pub fn spectrum(spec: &EigenfunctionSpec, energy: f64, residual: f64) -> Row {
        Row {
            cells: vec![
                Cell::Text(spec.family.name()),
                spec.truncation.map_or(Cell::Empty, |n| Cell::Int(n as i64)),
                Cell::Text(parity_str(spec.parity).into()),
                Cell::Text(period_str(spec.period).into()),
                Cell::Bool(spec.arscott_ok),
                Cell::Float(FullFloat(energy)),
                Cell::Float(FullFloat(residual)),
            ],
        }
    }

    pub fn eigenfunction(u: f64, psi: f64, residual: f64) -> Row {
        Row {
            cells: vec![
                Cell::Float(FullFloat(u)),
                Cell::Float(FullFloat(psi)),
                Cell::Float(FullFloat(residual)),
            ],
        }
    }

    pub fn classification(spec: &EigenfunctionSpec) -> Row {
        Row {
            cells: vec![
                Cell::Text("finite".into()),
                Cell::Text(spec.family.name()),
                spec.truncation.map_or(Cell::Empty, |n| Cell::Int(n as i64)),
                Cell::Text(parity_str(spec.parity).into()),
                Cell::Text(period_str(spec.period).into()),
                Cell::Bool(spec.arscott_ok),
                Cell::Bool(spec.boundary),
            ],
        }
    }

    pub fn infinite_family(index: u8) -> Row {
        Row {
            cells: vec![
                Cell::Text("infinite".into()),
                Cell::Text(format!("Phi_{index}")),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ],
        }
    }
}

pub struct Table {
    command: &'static str,
    header: &'static [&'static str],
    rows: Vec<Row>,
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    schema: u32,
    command: &'a str,
    columns: &'a [&'a str],
    rows: Vec<Vec<&'a Cell>>,
}

impl Table {
    pub fn new(command: &'static str, header: &'static [&'static str], rows: Vec<Row>) -> Table {
        Table { command, header, rows }
    }

    fn cell_csv(cell: &Cell) -> String {
        match cell {
            Cell::Text(s) => s.clone(),
            Cell::Float(f) => format_float(f.0),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.cells.iter().map(Self::cell_csv).collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            Format::Json => {
                let doc = JsonDoc {
                    schema: 1,
                    command: self.command,
                    columns: self.header,
                    rows: self.rows.iter().map(|r| r.cells.iter().collect()).collect(),
                };
                serde_json::to_string_pretty(&doc)
                    .map(|mut s| {
                        s.push('\n');
                        s
                    })
                    .map_err(|e| e.to_string())
            }
        }
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<(), String> {
        let text = self.render(format)?;
        match out {
            Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
            None => {
                std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string())
            }
        }
    }
}
