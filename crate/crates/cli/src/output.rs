//! Rendering and the single write to the destination.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use qsz_core::report::{
    write_bound_csv, write_cycle_csv, write_limit_csv, write_spectrum_csv, write_sweep_csv,
};
use qsz_core::{BoundQuantity, BoundReport, CycleReport, LimitTable, Spectrum, Strategy};

use crate::args::Format;

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Cycle(CycleReport),
    Sweep {
        strategy: Strategy,
        points: Vec<CycleReport>,
    },
    Spectrum(Spectrum),
    Limit(LimitTable),
    Bounds {
        quantity: BoundQuantity,
        rows: Vec<BoundReport>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("cannot encode JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write {dest}: {source}")]
    Io { dest: String, source: io::Error },
}

pub fn render(report: &Report, format: Format) -> Result<Vec<u8>, EmitError> {
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, report)?;
            buf.push(b'\n');
        }
        Format::Csv => match report {
            Report::Cycle(r) => write_cycle_csv(r, &mut buf)?,
            Report::Sweep { points, .. } => write_sweep_csv(points, &mut buf)?,
            Report::Spectrum(s) => write_spectrum_csv(s, &mut buf)?,
            Report::Limit(t) => write_limit_csv(t, &mut buf)?,
            Report::Bounds { rows, .. } => write_bound_csv(rows, &mut buf)?,
        },
    }
    Ok(buf)
}

/// Renders fully in memory, then writes the bytes in one call.
pub fn emit(report: &Report, format: Format, dest: Option<&Path>) -> Result<(), EmitError> {
    let bytes = render(report, format)?;
    match dest {
        Some(path) => fs::write(path, &bytes).map_err(|source| EmitError::Io {
            dest: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|source| EmitError::Io {
                    dest: "standard output".into(),
                    source,
                })
        }
    }
}
