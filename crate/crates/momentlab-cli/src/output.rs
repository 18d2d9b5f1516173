//! Result rows and their CSV/JSON renderings.
//!
//! Every subcommand produces the same row schema
//! [ensemble, k, m, n, N, engine, value, stderr, seed] so results from
//! different engines diff mechanically; fields that do not apply stay
//! empty. Exact values render as integers or fractions "p/q", Monte
//! Carlo values as decimals with the stderr column set. Rendering is
//! deterministic, so identical runs give byte-identical output.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::PathBuf;

use momentlab_core::{Error, Result};
use serde_json::json;

use crate::args::Format;

pub const COLUMNS: [&str; 9] = [
    "ensemble", "k", "m", "n", "N", "engine", "value", "stderr", "seed",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Row {
    pub ensemble: String,
    pub k: String,
    pub m: String,
    pub n: String,
    pub cap: String,
    pub engine: String,
    pub value: String,
    pub stderr: String,
    pub seed: String,
}

impl Row {
    fn fields(&self) -> [&str; 9] {
        [
            &self.ensemble,
            &self.k,
            &self.m,
            &self.n,
            &self.cap,
            &self.engine,
            &self.value,
            &self.stderr,
            &self.seed,
        ]
    }
}

/// Everything a subcommand reports: rows, free-form notes, and the
/// resolved configuration echoed into JSON metadata.
#[derive(Debug, Default)]
pub struct Report {
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
    pub config: BTreeMap<String, String>,
}

pub fn render_csv(rows: &[Row]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(COLUMNS)
        .map_err(|e| Error::Parse(format!("csv encoding failed: {e}")))?;
    for row in rows {
        writer
            .write_record(row.fields())
            .map_err(|e| Error::Parse(format!("csv encoding failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Parse(format!("csv encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(format!("csv encoding failed: {e}")))
}

pub fn render_json(report: &Report) -> Result<String> {
    let rows: Vec<serde_json::Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "ensemble": r.ensemble,
                "k": r.k,
                "m": r.m,
                "n": r.n,
                "N": r.cap,
                "engine": r.engine,
                "value": r.value,
                "stderr": r.stderr,
                "seed": r.seed,
            })
        })
        .collect();
    let doc = json!({
        "meta": {
            "version": env!("CARGO_PKG_VERSION"),
            "config": report.config,
            "notes": report.notes,
        },
        "rows": rows,
    });
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::Parse(format!("json encoding failed: {e}")))?;
    Ok(text + "\n")
}

/// Writes the report: rows go to the output file when one is given,
/// otherwise to stdout; notes always print to stdout.
pub fn emit(report: &Report, output: Option<&PathBuf>, format: Format) -> Result<()> {
    let body = match format {
        Format::Csv => render_csv(&report.rows)?,
        Format::Json => render_json(report)?,
    };
    let mut stdout = std::io::stdout().lock();
    for note in &report.notes {
        writeln!(stdout, "{note}")
            .map_err(|e| Error::Parse(format!("cannot write to stdout: {e}")))?;
    }
    match output {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| {
                Error::Parse(format!("cannot write output file {}: {e}", path.display()))
            })?;
        }
        None => {
            if !report.notes.is_empty() {
                writeln!(stdout)
                    .map_err(|e| Error::Parse(format!("cannot write to stdout: {e}")))?;
            }
            write!(stdout, "{body}")
                .map_err(|e| Error::Parse(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

/// Renders an f64 with Rust's shortest round-trip formatting.
pub fn decimal(v: f64) -> String {
    format!("{v}")
}
