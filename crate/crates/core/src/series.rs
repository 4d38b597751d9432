//! Gaussian-type series `sum_{k>=1} exp(-alpha k^2)` with certified
//! truncation, and its Poisson-resummed theta form.
//!
//! Direct summation is run in the shifted form `exp(-alpha (k^2 - 1))` so
//! that large `alpha` neither underflows nor loses the ground-term scale.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::NumericControls;

/// Effective parameters below this are refused; the integral approximation
/// in [`crate::limits`] is the right tool there.
pub const MIN_ALPHA: f64 = 1e-12;

/// Below this the theta representation converges in a handful of terms
/// while the direct series needs thousands.
pub const THETA_SWITCH: f64 = 0.1;

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator.
pub fn sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// How a partition function value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Theta,
}

/// Truncated shifted weights `exp(-alpha (k^2 - 1))`, `k = 1..=len`.
#[derive(Debug, Clone)]
pub struct GaussianWeights {
    pub alpha: f64,
    pub weights: Vec<f64>,
    /// Sum of the retained weights.
    pub shifted_sum: f64,
    /// Upper bound on the neglected part of `shifted_sum`.
    pub tail_bound: f64,
    /// Upper bound on the neglected part of `sum alpha k^2 w_k`.
    pub energy_tail_bound: f64,
}

/// Bounds on `int_K^inf exp(-alpha (x^2 - 1)) dx` and
/// `alpha int_K^inf x^2 exp(-alpha (x^2 - 1)) dx`, given the last term
/// `exp(-alpha (K^2 - 1))`.
fn tail_bounds(alpha: f64, k: f64, last: f64) -> (f64, f64) {
    let norm = last / (2.0 * alpha * k);
    let energy = last * (0.5 * k + 1.0 / (4.0 * alpha * k));
    (norm, energy)
}

/// Sums weights until the next term, the tail of the norm and the tail of
/// the energy moment are all below `tol` relative to the partial sum. The
/// retained length is rounded up to an even count so levels can be paired.
pub fn gaussian_weights(alpha: f64, ctl: &NumericControls) -> Result<GaussianWeights> {
    check_alpha(alpha)?;
    let tol = ctl.series_tol;
    let mut weights = Vec::new();
    let mut acc = CompensatedSum::new();
    let mut k: usize = 0;
    loop {
        if k >= ctl.max_terms {
            return Err(Error::NotConverged {
                tol,
                max_terms: ctl.max_terms,
            });
        }
        k += 1;
        let kf = k as f64;
        let w = (-alpha * (kf * kf - 1.0)).exp();
        weights.push(w);
        acc.add(w);
        let partial = acc.value();
        let (tail, etail) = tail_bounds(alpha, kf, w);
        if k.is_multiple_of(2) && w < tol * partial && tail < tol * partial && etail < tol * partial {
            return Ok(GaussianWeights {
                alpha,
                weights,
                shifted_sum: partial,
                tail_bound: tail,
                energy_tail_bound: etail,
            });
        }
    }
}

/// `sum_{k>=1} exp(-alpha k^2)` by direct certified summation, returned as
/// its natural logarithm.
pub fn ln_partition_direct(alpha: f64, ctl: &NumericControls) -> Result<f64> {
    let w = gaussian_weights(alpha, ctl)?;
    Ok(-alpha + w.shifted_sum.ln())
}

/// Jacobi-type theta sum `sum_{n in Z} exp(-pi^2 n^2 / alpha)`.
pub fn dual_theta(alpha: f64) -> f64 {
    let q = PI * PI / alpha;
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    let mut n = 1.0_f64;
    loop {
        let t = 2.0 * (-q * n * n).exp();
        acc.add(t);
        if t < 1e-18 * acc.value() {
            break;
        }
        n += 1.0;
    }
    acc.value()
}

/// `sum_{k>=1} exp(-alpha k^2) = (sqrt(pi/alpha) theta - 1) / 2` via Poisson
/// resummation. Valid for any `alpha > 0`; efficient for small `alpha`.
pub fn partition_theta(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(0.5 * ((PI / alpha).sqrt() * dual_theta(alpha) - 1.0))
}

/// Logarithm of `sum_{k>=1} exp(-alpha k^2)`, choosing the representation
/// by the size of `alpha`.
pub fn ln_partition(alpha: f64, ctl: &NumericControls) -> Result<(f64, Method)> {
    check_alpha(alpha)?;
    if alpha < THETA_SWITCH {
        Ok((partition_theta(alpha)?.ln(), Method::Theta))
    } else {
        Ok((ln_partition_direct(alpha, ctl)?, Method::Direct))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::domain(format!(
            "series parameter must be finite and > 0, got {alpha}"
        )));
    }
    if alpha < MIN_ALPHA {
        return Err(Error::Range {
            alpha,
            min: MIN_ALPHA,
        });
    }
    Ok(())
}
