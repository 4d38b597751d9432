//! CSV encoders. Every table has a header row, `,` separators, `.` decimal
//! points and `\n` line endings. Floats use the shortest representation that
//! round-trips.

use std::io::Write;

use serde::Serialize;

use crate::cycle::CycleReport;
use crate::limits::{BoundReport, LimitTable};
use crate::spectrum::{Parity, Spectrum};

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_rows<W: Write, R: Serialize>(
    out: W,
    rows: impl IntoIterator<Item = R>,
) -> csv::Result<()> {
    let mut w = writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct StepRow<'a> {
    step: &'a str,
    #[serde(rename = "W_kT")]
    w: f64,
    #[serde(rename = "Q_kT")]
    q: f64,
    #[serde(rename = "dU_kT")]
    du: f64,
    #[serde(rename = "dS_kB")]
    ds: f64,
}

/// One row per step: `step,W_kT,Q_kT,dU_kT,dS_kB`.
pub fn write_cycle_csv<W: Write>(report: &CycleReport, out: W) -> csv::Result<()> {
    write_rows(
        out,
        report.steps.iter().map(|s| StepRow {
            step: s.name.name(),
            w: s.w_by_system,
            q: s.q_absorbed,
            du: s.du,
            ds: s.ds,
        }),
    )
}

#[derive(Serialize)]
struct SweepRow {
    xi: f64,
    strategy: &'static str,
    #[serde(rename = "W_tot_kT")]
    w_tot: f64,
    #[serde(rename = "Q_tot_kT")]
    q_tot: f64,
    #[serde(rename = "W1_kT")]
    w1: f64,
    #[serde(rename = "delta_q_kB")]
    delta_q: f64,
    first_law_total: f64,
    exp_identity: f64,
    erasure_balance: f64,
    state_closure: f64,
}

/// One row per cycle, ordered as given.
pub fn write_sweep_csv<W: Write>(reports: &[CycleReport], out: W) -> csv::Result<()> {
    write_rows(
        out,
        reports.iter().map(|r| SweepRow {
            xi: r.xi,
            strategy: match r.strategy {
                crate::cycle::Strategy::Isothermal => "isothermal",
                crate::cycle::Strategy::Adiabatic => "adiabatic",
            },
            w_tot: r.w_tot,
            q_tot: r.q_tot,
            w1: r.w1,
            delta_q: r.delta_q,
            first_law_total: r.residuals.first_law_total,
            exp_identity: r.residuals.exp_identity,
            erasure_balance: r.residuals.erasure_balance,
            state_closure: r.residuals.state_closure,
        }),
    )
}

#[derive(Serialize)]
struct BoundRow {
    xi: f64,
    value: f64,
    lower: Option<f64>,
    upper: Option<f64>,
    valid: bool,
}

/// `xi,value,lower,upper,valid`; absent bounds are empty fields.
pub fn write_bound_csv<W: Write>(reports: &[BoundReport], out: W) -> csv::Result<()> {
    write_rows(
        out,
        reports.iter().map(|r| BoundRow {
            xi: r.xi,
            value: r.value,
            lower: r.lower,
            upper: r.upper,
            valid: r.bound_valid,
        }),
    )
}

#[derive(Serialize)]
struct LimitCsvRow {
    xi: f64,
    #[serde(rename = "w_tot_kT")]
    w_tot: f64,
    deviation: f64,
    bound: f64,
    bound_valid: bool,
}

/// `xi,w_tot_kT,deviation,bound,bound_valid`.
pub fn write_limit_csv<W: Write>(table: &LimitTable, out: W) -> csv::Result<()> {
    write_rows(
        out,
        table.rows.iter().map(|r| LimitCsvRow {
            xi: r.xi,
            w_tot: r.w_tot_kt,
            deviation: r.deviation,
            bound: r.bound,
            bound_valid: r.bound_valid,
        }),
    )
}

#[derive(Serialize)]
struct LevelRow {
    n: usize,
    e_reduced: f64,
    parity: Parity,
}

/// `n,e_reduced,parity`.
pub fn write_spectrum_csv<W: Write>(spectrum: &Spectrum, out: W) -> csv::Result<()> {
    write_rows(
        out,
        spectrum.levels.iter().map(|l| LevelRow {
            n: l.n,
            e_reduced: l.e_reduced,
            parity: l.parity,
        }),
    )
}
