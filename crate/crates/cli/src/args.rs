use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsz_core::{BarrierStrength, BoundQuantity, Strategy};

#[derive(Debug, Parser)]
#[command(
    name = "qsz",
    version,
    about = "Quantum Szilard engine: cycles, sweeps, spectra and limit tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub output: OutputArgs,

    #[command(flatten)]
    pub numerics: NumericArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one full cycle and print its ledger.
    Compute {
        #[command(flatten)]
        source: XiSource,
        #[arg(long, value_enum, default_value_t = StrategyArg::Isothermal)]
        strategy: StrategyArg,
    },
    /// Run cycles on a log-spaced xi grid.
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Isothermal)]
        strategy: StrategyArg,
    },
    /// Levels of the well split by a central delta barrier.
    Spectrum {
        /// Reduced barrier strength, or `inf` for an impenetrable barrier.
        #[arg(long, value_parser = parse_lambda, allow_negative_numbers = true)]
        lambda: BarrierStrength,
        /// Number of level pairs.
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        levels: u32,
    },
    /// Small-xi tables: the ln 2 limit or one of the closed-form bounds.
    Limits {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = QuantityArg::Classical)]
        quantity: QuantityArg,
    },
}

#[derive(Debug, Args)]
pub struct XiSource {
    /// Reduced parameter pi^2 hbar^2 / (2 m L^2 k_B T).
    #[arg(
        long,
        value_parser = parse_positive, allow_negative_numbers = true,
        conflicts_with_all = ["mass", "length", "temperature"],
        required_unless_present_all = ["mass", "length", "temperature"]
    )]
    pub xi: Option<f64>,
    /// Particle mass in kg.
    #[arg(long, value_parser = parse_positive, allow_negative_numbers = true, requires_all = ["length", "temperature"])]
    pub mass: Option<f64>,
    /// Well width in m.
    #[arg(long, value_parser = parse_positive, allow_negative_numbers = true, requires_all = ["mass", "temperature"])]
    pub length: Option<f64>,
    /// Bath temperature in K.
    #[arg(long, value_parser = parse_positive, allow_negative_numbers = true, requires_all = ["mass", "length"])]
    pub temperature: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, value_parser = parse_positive, allow_negative_numbers = true)]
    pub xi_min: f64,
    #[arg(long, value_parser = parse_positive, allow_negative_numbers = true)]
    pub xi_max: f64,
    /// Number of log-spaced points, endpoints included.
    #[arg(long, default_value_t = 61, value_parser = clap::value_parser!(u32).range(2..))]
    pub points: u32,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    /// Relative series truncation tolerance.
    #[arg(long, global = true, env = "QSZ_TOL", value_parser = parse_tol)]
    pub tol: Option<f64>,
    /// Grid intervals for the quasi-static quadrature.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub quad_steps: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Isothermal,
    Adiabatic,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Isothermal => Strategy::Isothermal,
            StrategyArg::Adiabatic => Strategy::Adiabatic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    /// Net isothermal work against ln 2.
    Classical,
    W1,
    W1OverU0,
    Delta,
}

impl QuantityArg {
    pub fn bound(self) -> Option<BoundQuantity> {
        match self {
            QuantityArg::Classical => None,
            QuantityArg::W1 => Some(BoundQuantity::W1),
            QuantityArg::W1OverU0 => Some(BoundQuantity::W1OverU0),
            QuantityArg::Delta => Some(BoundQuantity::DeltaQ),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| format!("`{s}` is not a number: {e}"))
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be a finite number > 0, got {s}"))
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v = parse_f64(s)?;
    if v > 0.0 && v <= 1e-3 {
        Ok(v)
    } else {
        Err(format!("must lie in (0, 1e-3], got {s}"))
    }
}

fn parse_lambda(s: &str) -> Result<BarrierStrength, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinite" | "infinity" => Ok(BarrierStrength::Infinite),
        _ => {
            let v = parse_f64(s)?;
            if v.is_finite() && v >= 0.0 {
                Ok(BarrierStrength::Finite(v))
            } else {
                Err(format!("must be a finite number >= 0 or `inf`, got {s}"))
            }
        }
    }
}
