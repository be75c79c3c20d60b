use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use hbac_core::bench::round_sig;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Numbers are written with 15 significant digits.
pub fn sig(x: f64) -> f64 {
    round_sig(x, 15)
}

pub fn sig_opt(x: Option<f64>) -> Option<f64> {
    x.map(sig)
}

/// Writes `rows` to `out` (stdout when `None`): CSV with a header row, or
/// a pretty-printed JSON array.
pub fn emit<T: Serialize>(rows: &[T], format: Format, out: Option<&Path>) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    write_rows(rows, format, sink)
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], format: Format, mut sink: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, rows)?;
            writeln!(sink)?;
            sink.flush()?;
        }
    }
    Ok(())
}
