//! Thermal bookkeeping for the particle in the well.
//!
//! The partition function of a well of width `w L` is
//! `Z = sum_{k>=1} exp(-(xi / w^2) k^2)`. Post-insertion states are the
//! classical mixture over half-well levels obtained by merging the pair
//! `(2k - 1, 2k)` of the full well onto `(2k)^2`; the barrier leaves no
//! coherences between them.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{self, gaussian_weights, ln_partition, Method};
use crate::spectrum::reduced_level;
use crate::units::{check_xi, NumericControls, Units};

/// Probabilities below this are dropped before `p ln p` is evaluated.
const PROB_FLOOR: f64 = 1e-300;

/// Occupation probabilities over levels of a well of width `w L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    pub width_fraction: f64,
    pub probs: Vec<f64>,
    /// Level energies in units of `E_1(L)`.
    pub energies_reduced: Vec<f64>,
    /// Boltzmann distribution at `xi` (true) or the non-equilibrium state
    /// right after insertion (false).
    pub equilibrium: bool,
    pub units: Units,
}

impl ThermalState {
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total_probability(&self) -> f64 {
        series::sum(self.probs.iter().copied())
    }
}

/// Entropy decomposition right after insertion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoSplit {
    /// Which-side entropy, `ln 2`.
    pub s_classical: f64,
    /// Entropy of the level distribution inside one half, `h(p)`.
    pub h_p: f64,
    /// `S_0 / k_B - h(p)`.
    pub delta_q: f64,
    pub units: Units,
}

fn check_width(w: f64) -> Result<()> {
    if w > 0.0 && w <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "width fraction must lie in (0, 1], got {w}"
        )))
    }
}

fn effective(xi: f64, w: f64) -> Result<f64> {
    check_xi(xi)?;
    check_width(w)?;
    Ok(xi / (w * w))
}

/// `ln Z` for a well of width `w L`.
pub fn ln_partition_function(xi: f64, w: f64, ctl: &NumericControls) -> Result<f64> {
    Ok(ln_partition(effective(xi, w)?, ctl)?.0)
}

/// `Z = sum_{k>=1} exp(-(xi / w^2) k^2)`. Underflows to zero for very large
/// `xi / w^2`; use [`ln_partition_function`] there.
pub fn partition_function(xi: f64, w: f64, ctl: &NumericControls) -> Result<f64> {
    Ok(ln_partition_function(xi, w, ctl)?.exp())
}

/// Boltzmann state of a well of width `w L`, truncated once the neglected
/// probability and energy tails are below `series_tol`.
pub fn equilibrium_state(xi: f64, w: f64, ctl: &NumericControls) -> Result<ThermalState> {
    let alpha = effective(xi, w)?;
    let (ln_z, method) = ln_partition(alpha, ctl)?;
    let gw = gaussian_weights(alpha, ctl)?;
    let probs = match method {
        // weights carry exp(+alpha); fold it into the normalization
        Method::Theta => {
            let scale = (-alpha - ln_z).exp();
            gw.weights.iter().map(|&x| x * scale).collect()
        }
        Method::Direct => gw.weights.iter().map(|&x| x / gw.shifted_sum).collect(),
    };
    let energies_reduced = (1..=gw.weights.len())
        .map(|k| reduced_level(k, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThermalState {
        width_fraction: w,
        probs,
        energies_reduced,
        equilibrium: true,
        units: Units::E1,
    })
}

/// Half-well state right after the barrier becomes impenetrable:
/// `p_k = P_{2k-1}(L) + P_{2k}(L)` on energies `(2k)^2`.
pub fn post_insertion_state(xi: f64, ctl: &NumericControls) -> Result<ThermalState> {
    let eq = equilibrium_state(xi, 1.0, ctl)?;
    Ok(merge_pairs(&eq))
}

pub(crate) fn merge_pairs(eq: &ThermalState) -> ThermalState {
    let probs: Vec<f64> = eq.probs.chunks_exact(2).map(|p| p[0] + p[1]).collect();
    let energies_reduced = (1..=probs.len())
        .map(|k| reduced_level(k, 0.5).expect("k >= 1"))
        .collect();
    ThermalState {
        width_fraction: 0.5,
        probs,
        energies_reduced,
        equilibrium: false,
        units: Units::E1,
    }
}

/// `U = sum_k P_k xi E_k` in units of `k_B T`.
pub fn internal_energy(state: &ThermalState, xi: f64) -> f64 {
    series::sum(
        state
            .probs
            .iter()
            .zip(&state.energies_reduced)
            .map(|(p, e)| p * xi * e),
    )
}

/// Energy variance `sum_k P_k (xi E_k - U)^2` in units of `(k_B T)^2`.
pub fn energy_variance(state: &ThermalState, xi: f64) -> f64 {
    let u = internal_energy(state, xi);
    series::sum(
        state
            .probs
            .iter()
            .zip(&state.energies_reduced)
            .map(|(p, e)| {
                let d = xi * e - u;
                p * d * d
            }),
    )
}

/// `-sum_k P_k ln P_k` in units of `k_B`, with `0 ln 0 = 0`.
pub fn entropy(state: &ThermalState) -> f64 {
    entropy_of(&state.probs)
}

pub(crate) fn entropy_of(probs: &[f64]) -> f64 {
    -series::sum(
        probs
            .iter()
            .filter(|&&p| p > PROB_FLOOR)
            .map(|&p| p * p.ln()),
    )
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `S_0 / k_B - h(p)` summed pair by pair as
/// `P_{2k} ln(1 + P_{2k-1}/P_{2k}) + P_{2k-1} ln(1 + P_{2k}/P_{2k-1})`,
/// with `P_{2k-1}/P_{2k} = exp(xi (4k - 1))`. Both terms are non-negative,
/// so nothing cancels.
pub(crate) fn quantum_deficit(eq: &ThermalState, xi: f64) -> f64 {
    series::sum(eq.probs.chunks_exact(2).enumerate().map(|(idx, p)| {
        let k = (idx + 1) as f64;
        let x = xi * (4.0 * k - 1.0);
        p[1] * softplus(x) + p[0] * (-x).exp().ln_1p()
    }))
}

/// Classical and quantum parts of the entropy change at insertion.
pub fn info_split(xi: f64, ctl: &NumericControls) -> Result<InfoSplit> {
    let eq = equilibrium_state(xi, 1.0, ctl)?;
    Ok(info_split_from(&eq, xi))
}

pub(crate) fn info_split_from(eq: &ThermalState, xi: f64) -> InfoSplit {
    let post = merge_pairs(eq);
    InfoSplit {
        s_classical: LN_2,
        h_p: entropy(&post),
        delta_q: quantum_deficit(eq, xi),
        units: Units::KB,
    }
}
