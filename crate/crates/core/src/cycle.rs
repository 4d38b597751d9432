//! Step ledgers for the two cyclic strategies.
//!
//! Every [`StepRecord`] stores the work done *by* the system, the heat it
//! absorbs, its internal-energy change (from the states before and after the
//! step) and its entropy change. Work and heat come from the closed-form
//! expression for each step, so `dU = Q - W` is a check rather than a
//! definition.
//!
//! Cycle: insertion (adiabatic barrier raise), measurement (which side),
//! then either
//! - isothermal: hold and thermalize at half width, quasi-static isothermal
//!   expansion back to full width; or
//! - adiabatic: expansion with frozen occupations, then thermalization;
//!
//! and finally removal of the barrier at the wall.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series;
use crate::thermo::{
    energy_variance, entropy, equilibrium_state, info_split_from, internal_energy,
    ln_partition_function, merge_pairs, ThermalState,
};
use crate::units::{check_xi, NumericControls, Units};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Insertion,
    Measurement,
    HoldThermalize,
    IsothermalExpand,
    AdiabaticExpand,
    PostExpandThermalize,
    Removal,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::Insertion => "insertion",
            StepKind::Measurement => "measurement",
            StepKind::HoldThermalize => "hold_thermalize",
            StepKind::IsothermalExpand => "isothermal_expand",
            StepKind::AdiabaticExpand => "adiabatic_expand",
            StepKind::PostExpandThermalize => "post_expand_thermalize",
            StepKind::Removal => "removal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Isothermal,
    Adiabatic,
}

/// Side on which the measurement finds the particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

/// One ledger entry. Energies in `k_B T`, entropy in `k_B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub name: StepKind,
    #[serde(rename = "W_by_system")]
    pub w_by_system: f64,
    #[serde(rename = "Q_absorbed")]
    pub q_absorbed: f64,
    #[serde(rename = "dU")]
    pub du: f64,
    #[serde(rename = "dS")]
    pub ds: f64,
}

impl StepRecord {
    /// `dU - (Q - W)`.
    pub fn first_law_residual(&self) -> f64 {
        self.du - (self.q_absorbed - self.w_by_system)
    }

    fn zero(name: StepKind) -> Self {
        StepRecord {
            name,
            w_by_system: 0.0,
            q_absorbed: 0.0,
            du: 0.0,
            ds: 0.0,
        }
    }
}

/// Signed identity residuals of one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    /// `W_tot - Q_tot`.
    pub first_law_total: f64,
    /// `Q_exp + W_1 - W_exp`.
    pub exp_identity: f64,
    /// Quantum information acquired at insertion minus the entropy restored
    /// by heat absorption.
    pub erasure_balance: f64,
    /// Largest of `|sum dU|` and `|sum dS|` over the cycle.
    pub state_closure: f64,
}

impl Residuals {
    pub fn max_abs(&self) -> f64 {
        [
            self.first_law_total,
            self.exp_identity,
            self.erasure_balance,
            self.state_closure,
        ]
        .iter()
        .fold(0.0_f64, |m, r| m.max(r.abs()))
    }
}

/// Work and heat of a quasi-static isothermal path obtained by quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathIntegral {
    pub from_w: f64,
    pub to_w: f64,
    pub steps: usize,
    #[serde(rename = "W_kT")]
    pub work: f64,
    #[serde(rename = "Q_kT")]
    pub heat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LedgerUnits {
    pub energy: Units,
    pub entropy: Units,
}

impl Default for LedgerUnits {
    fn default() -> Self {
        LedgerUnits {
            energy: Units::KT,
            entropy: Units::KB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleReport {
    pub strategy: Strategy,
    pub xi: f64,
    pub outcome: Side,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "W_tot")]
    pub w_tot: f64,
    #[serde(rename = "Q_tot")]
    pub q_tot: f64,
    /// Insertion work done on the system by the external agent.
    #[serde(rename = "W1")]
    pub w1: f64,
    /// Quantum information deficit `S_0 / k_B - h(p)`.
    pub delta_q: f64,
    pub residuals: Residuals,
    /// Quadrature cross-check of the isothermal expansion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion_quadrature: Option<PathIntegral>,
    #[serde(default)]
    pub units: LedgerUnits,
}

impl CycleReport {
    pub fn step(&self, kind: StepKind) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.name == kind)
    }

    pub fn max_step_first_law_residual(&self) -> f64 {
        self.steps
            .iter()
            .fold(0.0_f64, |m, s| m.max(s.first_law_residual().abs()))
    }
}

/// States shared by every step of a cycle at one `xi`.
struct Engine {
    xi: f64,
    post: ThermalState,
    u0: f64,
    s0: f64,
    u1: f64,
    h_p: f64,
    delta_q: f64,
    w1: f64,
}

impl Engine {
    fn new(xi: f64, ctl: &NumericControls) -> Result<Self> {
        check_xi(xi)?;
        ctl.validate()?;
        let initial = equilibrium_state(xi, 1.0, ctl)?;
        let post = merge_pairs(&initial);
        let split = info_split_from(&initial, xi);
        Ok(Engine {
            xi,
            u0: internal_energy(&initial, xi),
            s0: entropy(&initial),
            u1: internal_energy(&post, xi),
            h_p: split.h_p,
            delta_q: split.delta_q,
            w1: insertion_work_from(&initial, xi),
            post,
        })
    }

    fn insertion(&self) -> StepRecord {
        StepRecord {
            name: StepKind::Insertion,
            w_by_system: -self.w1,
            q_absorbed: 0.0,
            du: self.u1 - self.u0,
            ds: std::f64::consts::LN_2 - self.delta_q,
        }
    }

    fn measurement(&self) -> StepRecord {
        StepRecord {
            ds: -std::f64::consts::LN_2,
            ..StepRecord::zero(StepKind::Measurement)
        }
    }

    fn isothermal(&self, ctl: &NumericControls) -> Result<(StepRecord, StepRecord)> {
        let xi = self.xi;
        let half = equilibrium_state(xi, 0.5, ctl)?;
        let u3 = internal_energy(&half, xi);
        let s3 = entropy(&half);
        // Q_3 = sum_k [P_k(L/2) - p_k] E_k(L/2); both states live on (2k)^2.
        let n = half.len().max(self.post.len());
        let q3 = series::sum((0..n).map(|k| {
            let p_eq = half.probs.get(k).copied().unwrap_or(0.0);
            let p_post = self.post.probs.get(k).copied().unwrap_or(0.0);
            let e = 4.0 * ((k + 1) as f64).powi(2);
            (p_eq - p_post) * xi * e
        }));
        let hold = StepRecord {
            name: StepKind::HoldThermalize,
            w_by_system: 0.0,
            q_absorbed: q3,
            du: u3 - self.u1,
            ds: s3 - self.h_p,
        };
        let w4 = ln_partition_function(xi, 1.0, ctl)? - ln_partition_function(xi, 0.5, ctl)?;
        let du4 = self.u0 - u3;
        let expand = StepRecord {
            name: StepKind::IsothermalExpand,
            w_by_system: w4,
            q_absorbed: du4 + w4,
            du: du4,
            ds: self.s0 - s3,
        };
        Ok((hold, expand))
    }

    fn adiabatic(&self) -> (StepRecord, StepRecord) {
        let xi = self.xi;
        let frozen = |factor: f64| {
            series::sum(
                self.post
                    .probs
                    .iter()
                    .enumerate()
                    .map(|(idx, p)| p * xi * factor * ((idx + 1) as f64).powi(2)),
            )
        };
        // frozen occupations p_k slide from (2k)^2 down to k^2
        let w3 = frozen(3.0);
        let u3 = frozen(1.0);
        let expand = StepRecord {
            name: StepKind::AdiabaticExpand,
            w_by_system: w3,
            q_absorbed: 0.0,
            du: u3 - self.u1,
            ds: 0.0,
        };
        let q4 = self.u0 - u3;
        let thermalize = StepRecord {
            name: StepKind::PostExpandThermalize,
            w_by_system: 0.0,
            q_absorbed: q4,
            du: q4,
            ds: self.s0 - self.h_p,
        };
        (expand, thermalize)
    }
}

fn insertion_work_from(initial: &ThermalState, xi: f64) -> f64 {
    // odd levels 2k - 1 rise to (2k)^2: shift (4k - 1) E_1
    series::sum(
        initial
            .probs
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(idx, p)| p * xi * (4.0 * (idx + 1) as f64 - 1.0)),
    )
}

/// Work done on the system by the agent while the barrier is raised, in
/// `k_B T`: `sum_k P_{2k-1}(L) xi [(2k)^2 - (2k-1)^2]`. Always positive.
pub fn insertion_work(xi: f64, ctl: &NumericControls) -> Result<f64> {
    check_xi(xi)?;
    Ok(insertion_work_from(&equilibrium_state(xi, 1.0, ctl)?, xi))
}

/// Insertion and measurement records, plus the collapsed half-well state.
pub fn run_insertion_and_measure(
    xi: f64,
    ctl: &NumericControls,
) -> Result<(StepRecord, StepRecord, ThermalState)> {
    let engine = Engine::new(xi, ctl)?;
    Ok((
        engine.insertion(),
        engine.measurement(),
        engine.post.clone(),
    ))
}

/// Hold-and-thermalize followed by quasi-static isothermal expansion.
pub fn isothermal_strategy(xi: f64, ctl: &NumericControls) -> Result<(StepRecord, StepRecord)> {
    Engine::new(xi, ctl)?.isothermal(ctl)
}

/// Adiabatic expansion with frozen occupations followed by thermalization.
pub fn adiabatic_strategy(xi: f64, ctl: &NumericControls) -> Result<(StepRecord, StepRecord)> {
    Ok(Engine::new(xi, ctl)?.adiabatic())
}

/// Trapezoid integration of `dW = -sum_n P_n dE_n` and `dQ = sum_n E_n dP_n`
/// along equilibrium states on a uniform grid of `quad_steps` intervals in
/// the width fraction.
///
/// With `E_n = (xi / w^2) n^2` these become `dW/dw = 2 U / w` and
/// `dQ/dw = 2 Var(E) / w`.
pub fn quasistatic_path(
    xi: f64,
    from_w: f64,
    to_w: f64,
    quad_steps: usize,
    ctl: &NumericControls,
) -> Result<PathIntegral> {
    check_xi(xi)?;
    if !(from_w > 0.0 && from_w < to_w && to_w <= 1.0) {
        return Err(Error::domain(format!(
            "path needs 0 < from_w < to_w <= 1, got [{from_w}, {to_w}]"
        )));
    }
    if quad_steps < 2 {
        return Err(Error::domain(format!(
            "quad_steps must be >= 2, got {quad_steps}"
        )));
    }
    let h = (to_w - from_w) / quad_steps as f64;
    let mut work = series::CompensatedSum::new();
    let mut heat = series::CompensatedSum::new();
    for i in 0..=quad_steps {
        let w = if i == quad_steps {
            to_w
        } else {
            from_w + i as f64 * h
        };
        let state = equilibrium_state(xi, w, ctl)?;
        let weight = if i == 0 || i == quad_steps {
            0.5 * h
        } else {
            h
        };
        work.add(weight * 2.0 * internal_energy(&state, xi) / w);
        heat.add(weight * 2.0 * energy_variance(&state, xi) / w);
    }
    Ok(PathIntegral {
        from_w,
        to_w,
        steps: quad_steps,
        work: work.value(),
        heat: heat.value(),
    })
}

/// Full cycle at `xi` for `strategy`, with the measurement outcome on the
/// left.
pub fn run_cycle(xi: f64, strategy: Strategy, ctl: &NumericControls) -> Result<CycleReport> {
    run_cycle_with_outcome(xi, strategy, Side::Left, ctl)
}

/// As [`run_cycle`]; the engine is mirror-symmetric, so either outcome gives
/// the same ledger.
pub fn run_cycle_with_outcome(
    xi: f64,
    strategy: Strategy,
    outcome: Side,
    ctl: &NumericControls,
) -> Result<CycleReport> {
    let engine = Engine::new(xi, ctl)?;
    let mut steps = vec![engine.insertion(), engine.measurement()];
    let (exp_identity, erasure_balance, quadrature) = match strategy {
        Strategy::Isothermal => {
            let (hold, expand) = engine.isothermal(ctl)?;
            steps.push(hold);
            steps.push(expand);
            let q_exp = hold.q_absorbed + expand.q_absorbed;
            let w_exp = hold.w_by_system + expand.w_by_system;
            let quad = quasistatic_path(xi, 0.5, 1.0, ctl.quad_steps, ctl)?;
            (
                q_exp + engine.w1 - w_exp,
                engine.delta_q - (hold.ds + expand.ds),
                Some(quad),
            )
        }
        Strategy::Adiabatic => {
            let (expand, thermalize) = engine.adiabatic();
            steps.push(expand);
            steps.push(thermalize);
            let q_exp = expand.q_absorbed + thermalize.q_absorbed;
            let w_exp = expand.w_by_system + thermalize.w_by_system;
            (
                q_exp + engine.w1 - w_exp,
                engine.delta_q - thermalize.ds,
                None,
            )
        }
    };
    steps.push(StepRecord::zero(StepKind::Removal));

    let w_tot = series::sum(steps.iter().map(|s| s.w_by_system));
    let q_tot = series::sum(steps.iter().map(|s| s.q_absorbed));
    let du_tot = series::sum(steps.iter().map(|s| s.du));
    let ds_tot = series::sum(steps.iter().map(|s| s.ds));
    let residuals = Residuals {
        first_law_total: w_tot - q_tot,
        exp_identity,
        erasure_balance,
        state_closure: du_tot.abs().max(ds_tot.abs()),
    };
    Ok(CycleReport {
        strategy,
        xi,
        outcome,
        steps,
        w_tot,
        q_tot,
        w1: engine.w1,
        delta_q: engine.delta_q,
        residuals,
        expansion_quadrature: quadrature,
        units: LedgerUnits::default(),
    })
}

/// Runs independent cycles in parallel; results keep the order of `xis`.
pub fn sweep(xis: &[f64], strategy: Strategy, ctl: &NumericControls) -> Result<Vec<CycleReport>> {
    xis.par_iter()
        .map(|&xi| run_cycle(xi, strategy, ctl))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn ctl() -> NumericControls {
        NumericControls::default()
    }

    #[test]
    fn insertion_work_limits() {
        let w = insertion_work(10.0, &ctl()).unwrap();
        assert!((w / 30.0 - 1.0).abs() < 1e-8);
        assert!(insertion_work(1e-10, &ctl()).unwrap() < 1e-4);
        // 400-term direct sum at 40 digits
        let w = insertion_work(0.5, &ctl()).unwrap();
        assert!((w - 1.259_365_673_333_166_4).abs() < 1e-12);
    }

    #[test]
    fn insertion_and_measurement_records() {
        let (ins, meas, collapsed) = run_insertion_and_measure(10.0, &ctl()).unwrap();
        assert!((ins.du - 30.0).abs() < 1e-8);
        assert_eq!(ins.w_by_system, -insertion_work(10.0, &ctl()).unwrap());
        assert_eq!(ins.q_absorbed, 0.0);
        assert_eq!(meas.ds, -LN_2);
        assert_eq!(
            (meas.w_by_system, meas.q_absorbed, meas.du),
            (0.0, 0.0, 0.0)
        );
        assert!(!collapsed.equilibrium);

        let (ins, _, _) = run_insertion_and_measure(1e-9, &ctl()).unwrap();
        assert!(ins.ds.abs() < 1e-6);
    }

    #[test]
    fn strategies_obey_first_law_per_step() {
        for xi in [1e-4, 0.1, 1.0, 10.0] {
            let (h, e) = isothermal_strategy(xi, &ctl()).unwrap();
            assert_eq!(h.w_by_system, 0.0);
            assert!(h.first_law_residual().abs() < 1e-11);
            assert!(e.first_law_residual().abs() < 1e-11);
            let (e, t) = adiabatic_strategy(xi, &ctl()).unwrap();
            assert_eq!(e.q_absorbed, 0.0);
            assert_eq!(e.ds, 0.0);
            assert!(e.first_law_residual().abs() < 1e-11);
            assert!(t.first_law_residual().abs() < 1e-11);
        }
    }

    #[test]
    fn large_xi_adiabatic_heat_vanishes() {
        let (e, t) = adiabatic_strategy(10.0, &ctl()).unwrap();
        assert!((e.w_by_system - 30.0).abs() < 1e-8);
        assert!(t.q_absorbed.abs() < 1e-8);
    }

    #[test]
    fn expansion_work_tends_to_ln2() {
        let (_, e) = isothermal_strategy(1e-10, &ctl()).unwrap();
        assert!((e.w_by_system - LN_2).abs() < 1e-4);
    }

    #[test]
    fn quasistatic_path_rejects_bad_intervals() {
        assert!(quasistatic_path(1.0, 0.5, 0.5, 10, &ctl()).is_err());
        assert!(quasistatic_path(1.0, 0.8, 0.5, 10, &ctl()).is_err());
        assert!(quasistatic_path(1.0, 0.0, 0.5, 10, &ctl()).is_err());
        assert!(quasistatic_path(1.0, 0.5, 1.0, 1, &ctl()).is_err());
    }

    #[test]
    fn quasistatic_path_closes_first_law() {
        let c = ctl();
        let p = quasistatic_path(1.0, 0.5, 1.0, 4000, &c).unwrap();
        let u_from = internal_energy(&equilibrium_state(1.0, 0.5, &c).unwrap(), 1.0);
        let u_to = internal_energy(&equilibrium_state(1.0, 1.0, &c).unwrap(), 1.0);
        assert!((p.heat - p.work - (u_to - u_from)).abs() < 1e-6);
    }

    #[test]
    fn both_outcomes_give_identical_ledgers() {
        for s in [Strategy::Isothermal, Strategy::Adiabatic] {
            let l = run_cycle_with_outcome(0.7, s, Side::Left, &ctl()).unwrap();
            let r = run_cycle_with_outcome(0.7, s, Side::Right, &ctl()).unwrap();
            assert_eq!(l.steps, r.steps);
            assert_eq!(l.residuals, r.residuals);
        }
    }

    #[test]
    fn ledger_shape() {
        let r = run_cycle(1.0, Strategy::Adiabatic, &ctl()).unwrap();
        let names: Vec<_> = r.steps.iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            [
                StepKind::Insertion,
                StepKind::Measurement,
                StepKind::AdiabaticExpand,
                StepKind::PostExpandThermalize,
                StepKind::Removal
            ]
        );
        assert!(r.expansion_quadrature.is_none());
        assert_eq!(r.step(StepKind::Removal).unwrap().du, 0.0);
    }

    #[test]
    fn sweep_preserves_order() {
        let xis = [1.0, 1e-3, 0.2];
        let reports = sweep(&xis, Strategy::Isothermal, &ctl()).unwrap();
        let got: Vec<_> = reports.iter().map(|r| r.xi).collect();
        assert_eq!(got, xis);
    }
}
