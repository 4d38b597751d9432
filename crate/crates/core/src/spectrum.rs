//! Levels of the infinite square well, with and without a delta barrier at
//! the centre.
//!
//! Energies here are in units of the ground level `E_1(L) = pi^2 hbar^2 /
//! (2 m L^2)`; multiply by `xi` for units of `k_B T`.
//!
//! With a barrier `lambda delta(x - L/2)` the sine states (odd about the
//! centre, index `2i`) have a node at the barrier and keep their energy
//! `(2i)^2`. The cosine states (even about the centre, index `2i - 1`) move to
//! `(2 r_i / pi)^2` where `r_i` solves `-r cot r = Lambda` on
//! `((i - 1/2) pi, i pi)` and `Lambda = m L lambda / (2 hbar^2)`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::gaussian_weights;
use crate::units::NumericControls;

/// Reduced barrier strength `Lambda = m L lambda / (2 hbar^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BarrierStrength {
    Finite(f64),
    Infinite,
}

impl Serialize for BarrierStrength {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BarrierStrength::Finite(v) => s.serialize_f64(*v),
            BarrierStrength::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for BarrierStrength {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(BarrierStrength::Finite(v)),
            Raw::Str(s) if s == "infinite" => Ok(BarrierStrength::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"infinite\", got {s:?}"
            ))),
        }
    }
}

/// Symmetry of a level's wavefunction about the well centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Sine states `n = 2k`; node at the centre.
    Odd,
    /// Cosine states `n = 2k - 1`; shifted by the barrier.
    Even,
    /// Infinite barrier: one member of a degenerate half-well pair.
    Merged,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub e_reduced: f64,
    pub parity: Parity,
    /// Guaranteed root bracket `((i - 1/2) pi, i pi)` for shifted levels.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(rename = "lambda_reduced")]
    pub barrier_strength: BarrierStrength,
    pub levels: Vec<Level>,
}

impl Spectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.e_reduced).collect()
    }

    /// Spectrum after insertion is complete: `2 * count` levels in degenerate
    /// pairs `(2k)^2`.
    pub fn infinite_barrier(count: usize) -> Result<Spectrum> {
        let levels = redistribution_map(count)?
            .into_iter()
            .map(|r| Level {
                n: r.n,
                e_reduced: reduced_level(r.k, 0.5).expect("k >= 1"),
                parity: Parity::Merged,
                bracket: None,
            })
            .collect();
        Ok(Spectrum {
            barrier_strength: BarrierStrength::Infinite,
            levels,
        })
    }
}

/// `(n / w)^2`: level `n` of a well of width `w L` in units of `E_1(L)`.
pub fn reduced_level(n: usize, width_fraction: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("level index must be >= 1"));
    }
    if !(width_fraction > 0.0 && width_fraction <= 1.0) {
        return Err(Error::domain(format!(
            "width fraction must lie in (0, 1], got {width_fraction}"
        )));
    }
    let x = n as f64 / width_fraction;
    Ok(x * x)
}

/// Roots `r_i` of `-r cot r = lambda` on `((i - 1/2) pi, i pi)`, `i = 1..=count`.
///
/// Solved by bisection in `d = i pi - r` on `(0, pi/2)` using the pole-free
/// form `(i pi - d) cos d - lambda sin d = 0`, which is strictly decreasing in
/// `d` and changes sign on the bracket.
pub fn barrier_roots(lambda: f64, count: usize, root_tol: f64) -> Result<Vec<f64>> {
    if !lambda.is_finite() {
        return Err(Error::domain(
            "barrier strength must be finite; use redistribution_map for the infinite barrier",
        ));
    }
    if lambda < 0.0 {
        return Err(Error::domain(format!(
            "barrier strength must be >= 0, got {lambda}"
        )));
    }
    if count == 0 {
        return Err(Error::domain("root count must be >= 1"));
    }
    if root_tol.is_nan() || root_tol <= 0.0 {
        return Err(Error::domain("root tolerance must be > 0"));
    }
    Ok((1..=count)
        .map(|i| root_in_period(lambda, i, root_tol))
        .collect())
}

fn root_in_period(lambda: f64, i: usize, root_tol: f64) -> f64 {
    let top = i as f64 * PI;
    if lambda == 0.0 {
        return top - FRAC_PI_2;
    }
    let h = |d: f64| (top - d) * d.cos() - lambda * d.sin();
    let (mut lo, mut hi) = (0.0_f64, FRAC_PI_2);
    while hi - lo > root_tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    top - 0.5 * (lo + hi)
}

/// Spectrum for a finite barrier: `count` unshifted sine levels `(2i)^2`
/// interleaved with `count` shifted cosine levels `(2 r_i / pi)^2`.
pub fn perturbed_spectrum(lambda: f64, count: usize, root_tol: f64) -> Result<Spectrum> {
    let roots = barrier_roots(lambda, count, root_tol)?;
    let mut levels = Vec::with_capacity(2 * count);
    for (idx, r) in roots.iter().enumerate() {
        let i = idx + 1;
        let x = 2.0 * r / PI;
        levels.push(Level {
            n: 0,
            e_reduced: x * x,
            parity: Parity::Even,
            bracket: Some([(i as f64 - 0.5) * PI, i as f64 * PI]),
        });
        levels.push(Level {
            n: 0,
            e_reduced: reduced_level(2 * i, 1.0)?,
            parity: Parity::Odd,
            bracket: None,
        });
    }
    levels.sort_by(|a, b| a.e_reduced.total_cmp(&b.e_reduced));
    for (idx, l) in levels.iter_mut().enumerate() {
        l.n = idx + 1;
    }
    Ok(Spectrum {
        barrier_strength: BarrierStrength::Finite(lambda),
        levels,
    })
}

/// Where full-well level `n` ends up once the barrier is impenetrable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Redistribution {
    /// Full-well index.
    pub n: usize,
    /// Half-well index receiving it.
    pub k: usize,
    /// True for `n = 2k - 1`, which moves up onto `(2k)^2`.
    pub shifted: bool,
}

/// `n = 2k - 1 -> k` (shifted up) and `n = 2k -> k` (unchanged) for
/// `n = 1..=2 * count`.
pub fn redistribution_map(count: usize) -> Result<Vec<Redistribution>> {
    if count == 0 {
        return Err(Error::domain("level count must be >= 1"));
    }
    Ok((1..=2 * count)
        .map(|n| Redistribution {
            n,
            k: n.div_ceil(2),
            shifted: n % 2 == 1,
        })
        .collect())
}

/// Number of half-well pairs the thermal series needs at `xi`.
pub fn default_level_count(xi: f64, ctl: &NumericControls) -> Result<usize> {
    Ok(gaussian_weights(xi, ctl)?.weights.len() / 2)
}
