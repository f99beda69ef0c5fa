// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Trotterized linear adiabatic preparation from analog gates.
//!
//! Both orders target `Σ J (ZZ + (t/T)(XX + YY)) + (h_P/2)(1 − t/T) Σ s Z`
//! starting from the Néel state. Each gate applies half its `κ` as the
//! staggered-field angle, so a plan with penalty `h_P` realizes `h_P/2`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gates::{apply_analog_gate, pulse_time, AnalogGate, PulseSequence};
use crate::engine::evolve::EvolutionResult;
use crate::engine::operator::CompiledOperator;
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::model::lattice::Couplings;
use crate::model::pauli::PauliSum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrotterOrder {
    #[default]
    First,
    SecondMinimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrotterPlan {
    /// Number of steps `M`.
    pub steps: usize,
    /// Simulated time `T`.
    pub total_time: f64,
    pub hp: f64,
    #[serde(default)]
    pub order: TrotterOrder,
}

impl TrotterPlan {
    pub fn new(order: TrotterOrder, steps: usize, total_time: f64, hp: f64) -> Result<Self> {
        let plan = Self {
            steps,
            total_time,
            hp,
            order,
        };
        plan.validate()?;
        Ok(plan)
    }

    /// The second-order plan on the shortest grid, `T = 2πM/Ω`.
    pub fn minimal_second_order(steps: usize, omega: f64, hp: f64) -> Result<Self> {
        check_omega(omega)?;
        Self::new(TrotterOrder::SecondMinimal, steps, 2.0 * PI * steps as f64 / omega, hp)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidArgument("a Trotter plan needs M ≥ 1".into()));
        }
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::InvalidArgument(format!("T = {}", self.total_time)));
        }
        if !self.hp.is_finite() {
            return Err(Error::InvalidArgument(format!("h_P = {}", self.hp)));
        }
        Ok(())
    }

    /// The full gate list, and the index one past each step's last gate.
    pub fn sequence(&self, couplings: &Couplings, omega: f64) -> Result<(PulseSequence, Vec<usize>)> {
        self.validate()?;
        check_omega(omega)?;
        let (gates, ends, omega_used) = match self.order {
            TrotterOrder::First => {
                let (g, e) = first_order_gates(self, pulse_time(omega));
                (g, e, omega)
            }
            TrotterOrder::SecondMinimal => {
                let sched = second_order_schedule(self, omega)?;
                let (g, e) = second_order_gates(&sched);
                (g, e, pulse_time(sched.pulse))
            }
        };
        Ok((PulseSequence::new(gates, couplings.clone(), omega_used)?, ends))
    }

    /// Device time `Θ` of the whole plan.
    pub fn device_time(&self, omega: f64) -> Result<f64> {
        check_omega(omega)?;
        Ok(match self.order {
            TrotterOrder::First => {
                let m = self.steps as f64;
                self.total_time * (2.0 + 1.0 / m) + 4.0 * pulse_time(omega) * m
            }
            TrotterOrder::SecondMinimal => second_order_schedule(self, omega)?.device_time,
        })
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("Ω = {omega}")))
    }
}

/// Step `m = 1..M`, in application order:
/// `R⁺_Y, R_Z(mΔt/M, 0), R⁻_Y, R⁺_X, R_Z(mΔt/M, 0), R⁻_X, R_Z(Δt, h_P(1 − m/M)Δt)`.
fn first_order_gates(plan: &TrotterPlan, eps: f64) -> (Vec<AnalogGate>, Vec<usize>) {
    let m_total = plan.steps as f64;
    let dt = plan.total_time / m_total;
    let mut gates = Vec::with_capacity(7 * plan.steps);
    let mut ends = Vec::with_capacity(plan.steps);
    for m in 1..=plan.steps {
        let u = m as f64 / m_total;
        let hop = AnalogGate::rz(u * dt, 0.0);
        gates.extend([
            AnalogGate::ry_plus(eps),
            hop,
            AnalogGate::ry_minus(eps),
            AnalogGate::rx_plus(eps),
            hop,
            AnalogGate::rx_minus(eps),
            AnalogGate::rz(dt, plan.hp * (1.0 - u) * dt),
        ]);
        ends.push(gates.len());
    }
    (gates, ends)
}

/// One block of the second-order schedule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderStep {
    pub t_start: f64,
    pub t_end: f64,
    /// Midpoint `τ_m`.
    pub tau: f64,
    /// Length `δ_m = t_m − t_{m−1}`.
    pub delta: f64,
    /// Staggered-field angle `κ_m = δ_m h_P (1 − τ_m/T)`.
    pub kappa: f64,
    /// `θ_m = δ_m + 4ε`.
    pub device_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderSchedule {
    pub steps: Vec<SecondOrderStep>,
    /// Pulse length actually used; equals `π/(2Ω)` on the minimal grid.
    pub pulse: f64,
    /// `Θ = Σ θ_m`.
    pub device_time: f64,
}

/// Largest `M` for which the second-order grid fits in time `T` under drive cap `Ω`.
pub fn max_feasible_steps(total_time: f64, omega: f64) -> usize {
    (total_time * omega / (2.0 * PI) * (1.0 + 1e-12)).floor() as usize
}

/// Grid `t_m = T √(m/M)` for the second-order plan.
///
/// Each block spends `2ε'` of XX/YY weight, so matching the ramp needs
/// `δ_m τ_m / T = 2ε'`, i.e. `ε' = T/(4M)`. That is the pulse length used;
/// it cannot be shorter than `π/(2Ω)`, which caps `M` at `TΩ/(2π)`. On the
/// minimal grid `T = 2πM/Ω` the two agree and `t_m = (2π/Ω)√(mM)`.
pub fn second_order_schedule(plan: &TrotterPlan, omega: f64) -> Result<SecondOrderSchedule> {
    plan.validate()?;
    check_omega(omega)?;
    let (big_t, m_total) = (plan.total_time, plan.steps);
    let eps_min = pulse_time(omega);
    let eps = big_t / (4.0 * m_total as f64);
    let infeasible = || {
        Error::Infeasible(format!(
            "M = {m_total} needs pulses shorter than π/(2Ω) = {eps_min} for T = {big_t}; \
             the largest feasible M at Ω = {omega} is {}",
            max_feasible_steps(big_t, omega)
        ))
    };
    if eps < eps_min * (1.0 - 1e-12) {
        return Err(infeasible());
    }
    let grid = |m: usize| big_t * (m as f64 / m_total as f64).sqrt();
    let mut steps = Vec::with_capacity(m_total);
    for m in 1..=m_total {
        let (a, b) = (grid(m - 1), grid(m));
        let (tau, delta) = ((a + b) / 2.0, b - a);
        if delta < eps {
            return Err(infeasible());
        }
        let kappa = delta * plan.hp * (1.0 - tau / big_t);
        let closed = plan.hp * (delta - 2.0 * eps);
        if (kappa - closed).abs() > 1e-10 * (1.0 + plan.hp.abs() * big_t) {
            return Err(Error::InvalidArgument(format!(
                "penalty angle {kappa} disagrees with h_P(δ − 2ε) = {closed} at step {m}"
            )));
        }
        steps.push(SecondOrderStep {
            t_start: a,
            t_end: b,
            tau,
            delta,
            kappa,
            device_time: delta + 4.0 * eps,
        });
    }
    let device_time = steps.iter().map(|s| s.device_time).sum();
    Ok(SecondOrderSchedule {
        steps,
        pulse: eps,
        device_time,
    })
}

/// Block `m`, in application order:
/// `R_Z((δ−ε)/2, κ/2), R⁺_Y, R⁺_X, R_Z(ε, 0), R⁺_X, R⁻_Y, R_Z((δ−ε)/2, κ/2)`.
fn second_order_gates(sched: &SecondOrderSchedule) -> (Vec<AnalogGate>, Vec<usize>) {
    let eps = sched.pulse;
    let mut gates = Vec::with_capacity(7 * sched.steps.len());
    let mut ends = Vec::with_capacity(sched.steps.len());
    for s in &sched.steps {
        let outer = AnalogGate::rz((s.delta - eps) / 2.0, s.kappa / 2.0);
        gates.extend([
            outer,
            AnalogGate::ry_plus(eps),
            AnalogGate::rx_plus(eps),
            AnalogGate::rz(eps, 0.0),
            AnalogGate::rx_plus(eps),
            AnalogGate::ry_minus(eps),
            outer,
        ]);
        ends.push(gates.len());
    }
    (gates, ends)
}

/// A Trotterized run: per-step probe energies against cumulative device time.
#[derive(Clone, Debug)]
pub struct TrotterRun {
    /// `times` are device times at step boundaries, `steps` is `M`.
    pub evolution: EvolutionResult,
    pub device_time: f64,
    pub sequence: PulseSequence,
}

/// Runs a plan gate by gate from `psi0`, recording `⟨probe⟩` after every step.
/// The intermediate readouts are simulator-only; hardware would need a fresh
/// preparation per probe time.
pub fn run_trotter(
    plan: &TrotterPlan,
    couplings: &Couplings,
    omega: f64,
    psi0: &StateVector,
    probe: Option<&PauliSum>,
) -> Result<TrotterRun> {
    let (sequence, ends) = plan.sequence(couplings, omega)?;
    if psi0.nsites() != couplings.nsites() {
        return Err(Error::DimensionMismatch {
            expected: couplings.nsites(),
            actual: psi0.nsites(),
        });
    }
    let probe = probe.map(CompiledOperator::new).transpose()?;
    let measure = |psi: &StateVector| -> Result<f64> {
        probe.as_ref().map_or(Ok(f64::NAN), |p| p.expectation(psi))
    };
    let mut psi = psi0.clone();
    let mut clock = 0.0;
    let mut times = vec![0.0];
    let mut energies = vec![measure(&psi)?];
    let mut start = 0;
    for end in ends {
        for g in &sequence.gates[start..end] {
            psi = apply_analog_gate(g, couplings, &psi)?;
            clock += g.duration;
        }
        start = end;
        times.push(clock);
        energies.push(measure(&psi)?);
    }
    Ok(TrotterRun {
        evolution: EvolutionResult {
            final_state: psi,
            times,
            energies,
            steps: plan.steps,
            refinement: 0.0,
        },
        device_time: clock,
        sequence,
    })
}

/// First-order plan (see [`run_trotter`]).
pub fn trotter_first_order(
    plan: &TrotterPlan,
    couplings: &Couplings,
    omega: f64,
    psi0: &StateVector,
    probe: Option<&PauliSum>,
) -> Result<TrotterRun> {
    if plan.order != TrotterOrder::First {
        return Err(Error::InvalidArgument("expected a first-order plan".into()));
    }
    run_trotter(plan, couplings, omega, psi0, probe)
}

/// Second-order plan (see [`second_order_schedule`] and [`run_trotter`]).
pub fn trotter_second_order(
    plan: &TrotterPlan,
    couplings: &Couplings,
    omega: f64,
    psi0: &StateVector,
    probe: Option<&PauliSum>,
) -> Result<TrotterRun> {
    if plan.order != TrotterOrder::SecondMinimal {
        return Err(Error::InvalidArgument("expected a second-order plan".into()));
    }
    run_trotter(plan, couplings, omega, psi0, probe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::expm::evolve_const;
    use crate::model::hamiltonians::{heisenberg, linear_adiabatic};
    use crate::model::lattice::LatticeSpec;

    #[test]
    fn minimal_grid_identities() {
        for &(m, omega) in &[(1usize, 8.0), (3, 8.0), (16, 8.0), (7, 2.5), (40, 31.4)] {
            let plan = TrotterPlan::minimal_second_order(m, omega, 0.3).unwrap();
            let sched = second_order_schedule(&plan, omega).unwrap();
            let t = plan.total_time;
            let sum: f64 = sched.steps.iter().map(|s| s.delta).sum();
            assert!((sum - t).abs() <= 1e-12 * t);
            assert!((sched.device_time - 2.0 * t).abs() <= 1e-12 * t);
            assert!((sched.pulse - pulse_time(omega)).abs() <= 1e-15 * t);
            for (k, s) in sched.steps.iter().enumerate() {
                let want = 2.0 * PI / omega * (((k + 1) * m) as f64).sqrt();
                assert!((s.t_end - want).abs() < 1e-12 * t);
            }
        }
    }

    #[test]
    fn too_many_steps_are_rejected() {
        let omega = 8.0;
        let t = 10.0;
        let max = max_feasible_steps(t, omega);
        assert_eq!(max, 12);
        let ok = TrotterPlan::new(TrotterOrder::SecondMinimal, max, t, 0.1).unwrap();
        assert!((ok.device_time(omega).unwrap() - 2.0 * t).abs() < 1e-12);
        let bad = TrotterPlan::new(TrotterOrder::SecondMinimal, max + 1, t, 0.1).unwrap();
        let err = second_order_schedule(&bad, omega).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
        assert!(err.to_string().contains("is 12"), "{err}");
        assert!(TrotterPlan::new(TrotterOrder::First, 0, t, 0.1).is_err());
    }

    #[test]
    fn first_order_device_time() {
        let c = LatticeSpec::chain(2, 1.0).unwrap().couplings();
        let plan = TrotterPlan::new(TrotterOrder::First, 5, 3.0, 0.2).unwrap();
        let (seq, ends) = plan.sequence(&c, 8.0).unwrap();
        assert_eq!(ends.len(), 5);
        let want = plan.device_time(8.0).unwrap();
        assert!((seq.device_time() - want).abs() < 1e-12);
        let dt: f64 = 3.0 / 5.0;
        let manual: f64 = (1..=5).map(|m| dt * (1.0 + 2.0 * m as f64 / 5.0) + 4.0 * pulse_time(8.0)).sum();
        assert!((manual - want).abs() < 1e-12);
    }

    fn direct_trotter(c: &Couplings, hp: f64, t: f64, m: usize) -> StateVector {
        let dt = t / m as f64;
        let mut psi = StateVector::neel_for(c).unwrap();
        for k in 1..=m {
            let h = linear_adiabatic(c, hp, k as f64 * dt, t).unwrap();
            psi = evolve_const(&h, dt, &psi).unwrap();
        }
        psi
    }

    #[test]
    fn ideal_pulses_reduce_to_first_order_trotter() {
        let c = LatticeSpec::chain(4, 1.0).unwrap().couplings();
        let (t, hp) = (2.0, 0.6);
        let psi0 = StateVector::neel_for(&c).unwrap();
        let gap = |m: usize| {
            let plan = TrotterPlan::new(TrotterOrder::First, m, t, hp).unwrap();
            let run = trotter_first_order(&plan, &c, 1e12, &psi0, None).unwrap();
            run.evolution.final_state.distance(&direct_trotter(&c, hp / 2.0, t, m)).unwrap()
        };
        let (a, b, d) = (gap(8), gap(16), gap(32));
        assert!(a < 0.4, "{a}");
        assert!(a / b > 1.8 && (b / d - 2.0).abs() < 0.2, "{a} {b} {d}");
    }

    #[test]
    fn trotter_lowers_the_energy() {
        let c = LatticeSpec::chain(4, 0.25).unwrap().couplings();
        let probe = heisenberg(&c.scaled(4.0));
        let psi0 = StateVector::neel_for(&c).unwrap();
        for plan in [
            TrotterPlan::new(TrotterOrder::First, 4, 4.0, 1.0).unwrap(),
            TrotterPlan::minimal_second_order(4, 8.0, 1.0).unwrap(),
        ] {
            let run = run_trotter(&plan, &c, 8.0, &psi0, Some(&probe)).unwrap();
            let e = &run.evolution.energies;
            assert_eq!(e.len(), 5);
            assert!(e[4] < e[0] - 0.5, "{e:?}");
            assert!((run.device_time - plan.device_time(8.0).unwrap()).abs() < 1e-12);
            assert!((run.evolution.final_state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}
