//! Physical constants, the reduced parameter and numerical controls.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant in J s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant in J/K (CODATA 2018, exact).
pub const K_B: f64 = 1.380_649e-23;

/// `xi = pi^2 hbar^2 / (2 m L^2 k_B T)` for a particle of mass `mass_kg` in a
/// well of width `length_m` coupled to a bath at `temperature_k`.
pub fn xi_from_physical(mass_kg: f64, length_m: f64, temperature_k: f64) -> Result<f64> {
    for (name, v) in [
        ("mass", mass_kg),
        ("length", length_m),
        ("temperature", temperature_k),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(format!(
                "{name} must be finite and > 0, got {v}"
            )));
        }
    }
    let e1 = std::f64::consts::PI.powi(2) * HBAR * HBAR / (2.0 * mass_kg * length_m * length_m);
    Ok(e1 / (K_B * temperature_k))
}

/// Maps a sequence of physical triples to reduced parameters. Sending either
/// `L` or `T` to infinity drives `xi` to zero, so both limits are served by
/// the same small-`xi` code path.
pub fn xi_sequence(triples: &[(f64, f64, f64)]) -> Result<Vec<f64>> {
    triples
        .iter()
        .map(|&(m, l, t)| xi_from_physical(m, l, t))
        .collect()
}

/// Unit tag carried by serialized quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Units {
    /// Energy in units of `k_B T`.
    #[serde(rename = "kT")]
    KT,
    /// Energy in units of the full-well ground level `E_1(L)`.
    #[serde(rename = "E1")]
    E1,
    /// Entropy in units of `k_B`.
    #[serde(rename = "kB")]
    KB,
}

/// Truncation and discretization controls shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericControls {
    /// Relative tolerance for series truncation.
    pub series_tol: f64,
    /// Cap on the number of summed terms.
    pub max_terms: usize,
    /// Absolute tolerance for eigenvalue roots.
    pub root_tol: f64,
    /// Number of grid intervals for path integrals.
    pub quad_steps: usize,
}

impl Default for NumericControls {
    fn default() -> Self {
        NumericControls {
            series_tol: 1e-12,
            max_terms: 4_000_000,
            root_tol: 1e-14,
            quad_steps: 1000,
        }
    }
}

impl NumericControls {
    pub fn with_series_tol(mut self, tol: f64) -> Self {
        self.series_tol = tol;
        self
    }

    pub fn with_quad_steps(mut self, steps: usize) -> Self {
        self.quad_steps = steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0 && self.series_tol <= 1e-3) {
            return Err(Error::domain(format!(
                "series_tol must lie in (0, 1e-3], got {}",
                self.series_tol
            )));
        }
        if self.max_terms < 16 {
            return Err(Error::domain(format!(
                "max_terms must be >= 16, got {}",
                self.max_terms
            )));
        }
        if !(self.root_tol > 0.0 && self.root_tol <= 1e-6) {
            return Err(Error::domain(format!(
                "root_tol must lie in (0, 1e-6], got {}",
                self.root_tol
            )));
        }
        if self.quad_steps < 2 {
            return Err(Error::domain(format!(
                "quad_steps must be >= 2, got {}",
                self.quad_steps
            )));
        }
        Ok(())
    }
}

/// The reduced parameter together with the numerical controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedConfig {
    pub xi: f64,
    pub controls: NumericControls,
}

impl ReducedConfig {
    pub fn new(xi: f64, controls: NumericControls) -> Result<Self> {
        check_xi(xi)?;
        controls.validate()?;
        Ok(ReducedConfig { xi, controls })
    }

    pub fn from_physical(
        mass_kg: f64,
        length_m: f64,
        temperature_k: f64,
        controls: NumericControls,
    ) -> Result<Self> {
        Self::new(
            xi_from_physical(mass_kg, length_m, temperature_k)?,
            controls,
        )
    }
}

pub(crate) fn check_xi(xi: f64) -> Result<()> {
    if xi.is_finite() && xi > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "xi must be finite and > 0, got {xi}"
        )))
    }
}
