mod args;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};

use qsz_core::limits::{bound_table, log_grid, log_grid_descending};
use qsz_core::spectrum::perturbed_spectrum;
use qsz_core::units::xi_from_physical;
use qsz_core::{
    classical_limit_check, run_cycle, sweep, BarrierStrength, NumericControls, Spectrum,
};

use args::{Cli, Command, GridArgs, XiSource};
use output::Report;

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn resolve_xi(src: &XiSource) -> f64 {
    if let Some(xi) = src.xi {
        return xi;
    }
    // clap guarantees the full triple when --xi is absent
    let (m, l, t) = (
        src.mass.expect("mass"),
        src.length.expect("length"),
        src.temperature.expect("temperature"),
    );
    match xi_from_physical(m, l, t) {
        Ok(xi) if xi.is_finite() && xi > 0.0 => xi,
        Ok(xi) => usage_error(
            ErrorKind::ValueValidation,
            format!("--mass/--length/--temperature give an unusable xi = {xi:e}"),
        ),
        Err(e) => usage_error(
            ErrorKind::ValueValidation,
            format!("--mass/--length/--temperature: {e}"),
        ),
    }
}

fn grid(g: &GridArgs, descending: bool) -> Vec<f64> {
    if g.xi_min >= g.xi_max {
        usage_error(
            ErrorKind::ValueValidation,
            format!(
                "--xi-min ({}) must be smaller than --xi-max ({})",
                g.xi_min, g.xi_max
            ),
        );
    }
    let n = g.points as usize;
    if descending {
        log_grid_descending(g.xi_min, g.xi_max, n)
    } else {
        log_grid(g.xi_min, g.xi_max, n)
    }
}

fn controls(cli: &Cli) -> NumericControls {
    let mut ctl = NumericControls::default();
    if let Some(tol) = cli.numerics.tol {
        ctl = ctl.with_series_tol(tol);
    }
    if let Some(n) = cli.numerics.quad_steps {
        ctl = ctl.with_quad_steps(n as usize);
    }
    ctl
}

fn run(cli: &Cli) -> qsz_core::Result<Report> {
    let ctl = controls(cli);
    ctl.validate()?;
    Ok(match &cli.command {
        Command::Compute { source, strategy } => {
            Report::Cycle(run_cycle(resolve_xi(source), (*strategy).into(), &ctl)?)
        }
        Command::Sweep { grid: g, strategy } => {
            let xis = grid(g, false);
            Report::Sweep {
                strategy: (*strategy).into(),
                points: sweep(&xis, (*strategy).into(), &ctl)?,
            }
        }
        Command::Spectrum { lambda, levels } => {
            let n = *levels as usize;
            Report::Spectrum(match lambda {
                BarrierStrength::Infinite => Spectrum::infinite_barrier(n)?,
                BarrierStrength::Finite(l) => perturbed_spectrum(*l, n, ctl.root_tol)?,
            })
        }
        Command::Limits { grid: g, quantity } => match quantity.bound() {
            None => Report::Limit(classical_limit_check(&grid(g, true), &ctl)?),
            Some(q) => Report::Bounds {
                quantity: q,
                rows: bound_table(&grid(g, false), q, &ctl)?,
            },
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match output::emit(&report, cli.output.format, cli.output.out.as_deref()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
