use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Run metadata written ahead of every table.
pub struct Provenance<'a> {
    pub command: &'a str,
    pub config: &'a RunConfig,
    pub timestamp: Option<String>,
}

impl Provenance<'_> {
    fn csv_header(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# generator: bogotherm {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(s, "# command: {}", self.command).unwrap();
        if let Some(t) = &self.timestamp {
            writeln!(s, "# timestamp: {t}").unwrap();
        }
        writeln!(s, "# config:").unwrap();
        for line in self.config.to_toml().lines() {
            if line.is_empty() {
                writeln!(s, "#").unwrap();
            } else {
                writeln!(s, "#   {line}").unwrap();
            }
        }
        s
    }

    fn json_envelope(&self, body: Value) -> Value {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "generator": format!("bogotherm {}", env!("CARGO_PKG_VERSION")),
            "command": self.command,
            "config": self.config,
        });
        if let Some(t) = &self.timestamp {
            v["timestamp"] = json!(t);
        }
        v["report"] = body;
        v
    }
}

/// A CSV cell: numbers in scientific notation with 17 significant digits.
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Num(x) => write!(f, "{x:.16e}"),
            Cell::Text(t) => write!(f, "{t}"),
            Cell::Bool(b) => write!(f, "{b}"),
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `# key: value` lines after the provenance block.
    pub notes: Vec<String>,
}

impl Table {
    fn to_csv(&self, prov: &Provenance) -> String {
        let mut s = prov.csv_header();
        for n in &self.notes {
            writeln!(s, "# {n}").unwrap();
        }
        writeln!(s, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        s
    }
}

/// Writes `stem.csv` (from the table) or `stem.json` (from the report).
pub fn write_report<T: Serialize>(
    dir: &Path,
    stem: &str,
    format: Format,
    prov: &Provenance,
    table: &Table,
    report: &T,
) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(format!("{stem}.{}", format.extension()));
    let text = match format {
        Format::Csv => table.to_csv(prov),
        Format::Json => {
            let body = serde_json::to_value(report)?;
            let mut s = serde_json::to_string_pretty(&prov.json_envelope(body))?;
            s.push('\n');
            s
        }
    };
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
