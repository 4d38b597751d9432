//! Numerical model of a single-particle quantum Szilard engine.
//!
//! A particle sits in a one-dimensional infinite square well of width `L`
//! in contact with a bath at temperature `T`. A delta barrier is raised
//! adiabatically at the centre, the particle is localized by a perfect
//! measurement, the barrier is expanded back to the wall (isothermally or
//! adiabatically followed by thermalization) and finally removed.
//!
//! Every quantity depends on the single dimensionless parameter
//!
//! ```text
//! xi = pi^2 hbar^2 / (2 m L^2 k_B T)
//! ```
//!
//! Energies are reported in units of `k_B T` unless a function says it
//! works in units of the ground level `E_1(L)`; entropies are in units of
//! `k_B`.
//!
//! Modules:
//! - [`spectrum`]: well levels, delta-barrier eigenvalue roots and the
//!   infinite-barrier level redistribution.
//! - [`thermo`]: partition-function series, thermal and post-insertion
//!   states, internal energy, entropy and the information split.
//! - [`cycle`]: step ledgers for both cyclic strategies.
//! - [`limits`]: small-`xi` asymptotics and closed-form bounds.
//! - [`report`]: CSV encoders for the ledger and table types.

pub mod cycle;
pub mod error;
pub mod limits;
pub mod report;
pub mod series;
pub mod spectrum;
pub mod thermo;
pub mod units;

pub use cycle::{
    insertion_work, quasistatic_path, run_cycle, sweep, CycleReport, Residuals, Side, StepKind,
    StepRecord, Strategy,
};
pub use error::{Error, Result};
pub use limits::{classical_limit_check, BoundQuantity, BoundReport, LimitRow, LimitTable};
pub use spectrum::{BarrierStrength, Parity, Spectrum};
pub use thermo::{InfoSplit, ThermalState};
pub use units::{NumericControls, ReducedConfig, Units};
