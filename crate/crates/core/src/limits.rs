//! Small-`xi` behaviour: the integral approximation of `Z`, closed-form
//! bounds on the insertion work and the quantum deficit, and the check that
//! the engine falls back to `W_tot = k_B T ln 2`.
//!
//! The bounds all replace `sum_k f(k)` by integrals and need
//! `(sqrt(pi)/2) xi^{-1/2}` to exceed the integration offset they drop;
//! outside that regime they are reported as unavailable.

use std::f64::consts::{LN_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle::{insertion_work, run_cycle, Strategy};
use crate::error::{Error, Result};
use crate::thermo::{equilibrium_state, info_split, internal_energy, ln_partition_function};
use crate::units::{check_xi, NumericControls};

fn half_sqrt_pi() -> f64 {
    0.5 * PI.sqrt()
}

/// `(sqrt(pi)/2) xi^{-1/2}`.
pub fn asymptotic_z(xi: f64) -> f64 {
    half_sqrt_pi() / xi.sqrt()
}

/// Largest `xi` at which the bounds that subtract 1 from the integral of
/// `exp(-xi x^2)` stay meaningful.
pub const BOUND_THRESHOLD: f64 = PI / 4.0;

/// `2 / ((sqrt(pi)/2) xi^{-1/2} - 1)`, an upper bound on the insertion work
/// in `k_B T`. `None` when the denominator is not positive (`xi >= pi/4`).
pub fn w1_upper_bound(xi: f64) -> Option<f64> {
    let den = asymptotic_z(xi) - 1.0;
    (xi > 0.0 && den > 0.0).then(|| 2.0 / den)
}

/// `2 / ((sqrt(pi)/4) xi^{-1/2} - xi/3)`, an upper bound on `W_1 / U_0`.
pub fn w1_over_u0_bound(xi: f64) -> Option<f64> {
    let den = 0.25 * PI.sqrt() / xi.sqrt() - xi / 3.0;
    (xi > 0.0 && den > 0.0).then(|| 2.0 / den)
}

/// Lower and upper bounds on `delta_q = S_0 / k_B - h(p)`:
/// `ln 2 - ((sqrt(pi)/2) xi^{1/2} + 1) / D` and `ln 2 + 1 / D` with
/// `D = (sqrt(pi)/2) xi^{-1/2} - 1`.
pub fn delta_bounds(xi: f64) -> Option<(f64, f64)> {
    let den = asymptotic_z(xi) - 1.0;
    (xi > 0.0 && den > 0.0).then(|| {
        let lower = LN_2 - (half_sqrt_pi() * xi.sqrt() + 1.0) / den;
        let upper = LN_2 + 1.0 / den;
        (lower, upper)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundQuantity {
    #[serde(rename = "W1")]
    W1,
    #[serde(rename = "W1_over_U0")]
    W1OverU0,
    DeltaQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub xi: f64,
    pub quantity: BoundQuantity,
    pub value: f64,
    pub upper: Option<f64>,
    pub lower: Option<f64>,
    pub bound_valid: bool,
}

impl BoundReport {
    /// `lower <= value <= upper` for whichever sides exist.
    pub fn holds(&self) -> bool {
        self.lower.is_none_or(|l| l <= self.value) && self.upper.is_none_or(|u| self.value <= u)
    }
}

/// Computes `quantity` at `xi` and pairs it with its closed-form bounds.
pub fn bound_report(
    xi: f64,
    quantity: BoundQuantity,
    ctl: &NumericControls,
) -> Result<BoundReport> {
    check_xi(xi)?;
    let (value, lower, upper) = match quantity {
        BoundQuantity::W1 => (insertion_work(xi, ctl)?, None, w1_upper_bound(xi)),
        BoundQuantity::W1OverU0 => {
            let u0 = internal_energy(&equilibrium_state(xi, 1.0, ctl)?, xi);
            (insertion_work(xi, ctl)? / u0, None, w1_over_u0_bound(xi))
        }
        BoundQuantity::DeltaQ => {
            let b = delta_bounds(xi);
            (info_split(xi, ctl)?.delta_q, b.map(|b| b.0), b.map(|b| b.1))
        }
    };
    Ok(BoundReport {
        xi,
        quantity,
        value,
        upper,
        lower,
        bound_valid: upper.is_some(),
    })
}

/// Bound reports over a grid of `xi`, evaluated in parallel.
pub fn bound_table(
    xis: &[f64],
    quantity: BoundQuantity,
    ctl: &NumericControls,
) -> Result<Vec<BoundReport>> {
    xis.par_iter()
        .map(|&xi| bound_report(xi, quantity, ctl))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub xi: f64,
    pub w_tot_kt: f64,
    /// `|W_tot - ln 2|`.
    pub deviation: f64,
    /// `w1_upper_bound + |ln(Z(L)/Z(L/2)) - ln 2|`; NaN when the work bound
    /// is unavailable.
    pub bound: f64,
    pub bound_valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitTable {
    pub rows: Vec<LimitRow>,
    pub deviations_decreasing: bool,
    /// Every row with a valid bound has `deviation <= bound`.
    pub within_bound: bool,
}

/// Runs the isothermal cycle along a decreasing `xi` sequence and compares
/// the net work with `ln 2`.
///
/// `W_tot - ln 2 = -W_1 + [ln(Z(L)/Z(L/2)) - ln 2]`; the integral
/// approximation gives the ratio exactly 2, so the second bracket is the
/// correction from the discrete sum.
pub fn classical_limit_check(xis: &[f64], ctl: &NumericControls) -> Result<LimitTable> {
    if xis.is_empty() {
        return Err(Error::domain("xi sequence is empty"));
    }
    for &xi in xis {
        check_xi(xi)?;
    }
    if xis.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("xi sequence must be strictly decreasing"));
    }
    let rows = xis
        .par_iter()
        .map(|&xi| -> Result<LimitRow> {
            let report = run_cycle(xi, Strategy::Isothermal, ctl)?;
            let ratio = ln_partition_function(xi, 1.0, ctl)? - ln_partition_function(xi, 0.5, ctl)?;
            let w_bound = w1_upper_bound(xi);
            Ok(LimitRow {
                xi,
                w_tot_kt: report.w_tot,
                deviation: (report.w_tot - LN_2).abs(),
                bound: w_bound.map_or(f64::NAN, |b| b + (ratio - LN_2).abs()),
                bound_valid: w_bound.is_some(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let deviations_decreasing = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
    let within_bound = rows
        .iter()
        .filter(|r| r.bound_valid)
        .all(|r| r.deviation <= r.bound);
    Ok(LimitTable {
        rows,
        deviations_decreasing,
        within_bound,
    })
}

/// `n` log-spaced points from `hi` down to `lo`.
pub fn log_grid_descending(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut g = log_grid(lo, hi, n);
    g.reverse();
    g
}

/// `n` log-spaced points from `lo` up to `hi`, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n - 1 => hi,
                    i => 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64),
                })
                .collect()
        }
    }
}
