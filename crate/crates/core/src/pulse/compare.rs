// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Spiral versus fixed-M Trotter plans on a shared device-time axis.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gates::pulse_time;
use super::trotter::{run_trotter, TrotterOrder, TrotterPlan};
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::spiral::sweep::{check_increasing, sweep_time, SweepResult};
use crate::spiral::SpiralConfig;

/// Coherence time of the reference device, in seconds.
pub const COHERENCE_SECONDS: f64 = 3e-6;
/// Largest drive amplitude of the reference device, in rad/s.
pub const OMEGA_MAX_RAD_PER_S: f64 = 2.0 * PI * 4.3e6;

/// Coherence time in units of `1/J` when the dimensionless drive `Ω` sits at
/// the device's amplitude cap.
pub fn coherence_time(omega: f64) -> f64 {
    COHERENCE_SECONDS * OMEGA_MAX_RAD_PER_S / omega
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareOptions {
    /// Trotter step counts.
    pub steps: Vec<usize>,
    pub order: TrotterOrder,
    /// Penalty `h_P` of the Trotter plans.
    pub hp: f64,
    /// Ising couplings seen by the Trotter gates, relative to the lattice's
    /// Heisenberg couplings.
    pub coupling_scale: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            steps: vec![4, 8, 16],
            order: TrotterOrder::First,
            hp: 1.0,
            coupling_scale: 0.25,
        }
    }
}

/// Probe energies on a device-time grid; `NaN` marks a plan that does not fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub times: Vec<f64>,
    pub spiral: SweepResult,
    pub steps: Vec<usize>,
    /// `trotter[k][i]`: plan with `steps[k]` at `times[i]`.
    pub trotter: Vec<Vec<f64>>,
    pub coherence_time: f64,
}

impl ComparisonTable {
    pub fn spiral_energies(&self) -> Vec<f64> {
        self.spiral.energies()
    }

    /// CSV with columns `device_time,spiral,trotter_M<k>...,E0,within_coherence`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["device_time".to_owned(), "spiral".to_owned()];
        header.extend(self.steps.iter().map(|m| format!("trotter_M{m}")));
        header.extend(["E0".to_owned(), "within_coherence".to_owned()]);
        out.write_record(&header)?;
        for (i, t) in self.times.iter().enumerate() {
            let mut row = vec![format!("{t:?}"), format!("{:?}", self.spiral.points[i].energy)];
            row.extend(self.trotter.iter().map(|curve| format!("{:?}", curve[i])));
            row.push(format!("{:?}", self.spiral.e0));
            row.push(u8::from(*t <= self.coherence_time).to_string());
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Simulated time a plan gets within device time `theta`, if any.
pub fn simulated_time(order: TrotterOrder, steps: usize, theta: f64, omega: f64) -> Option<f64> {
    let m = steps as f64;
    let t = match order {
        TrotterOrder::First => (theta - 4.0 * pulse_time(omega) * m) / (2.0 + 1.0 / m),
        TrotterOrder::SecondMinimal => {
            let t = theta / 2.0;
            if super::trotter::max_feasible_steps(t, omega) < steps {
                return None;
            }
            t
        }
    };
    (t > 0.0).then_some(t)
}

/// Runs the spiral from `cfg` (its `Ω` is the shared drive cap) and every
/// Trotter plan over the device-time grid `times`.
pub fn compare_protocols(cfg: &SpiralConfig, times: &[f64], opts: &CompareOptions) -> Result<ComparisonTable> {
    check_increasing(times, "device time")?;
    if opts.steps.is_empty() || opts.steps.contains(&0) {
        return Err(Error::InvalidArgument("Trotter step counts must be positive".into()));
    }
    if !(opts.coupling_scale > 0.0 && opts.coupling_scale.is_finite()) {
        return Err(Error::InvalidArgument(format!("coupling scale {}", opts.coupling_scale)));
    }
    let omega = cfg.sched.omega;
    let spiral = sweep_time(cfg, times)?;
    let couplings = cfg.spec.couplings().scaled(opts.coupling_scale);
    let psi0 = StateVector::neel_for(&couplings)?;
    let jobs: Vec<(usize, f64)> = opts
        .steps
        .iter()
        .flat_map(|&m| times.iter().map(move |&t| (m, t)))
        .collect();
    let energies = jobs
        .par_iter()
        .map(|&(m, theta)| match simulated_time(opts.order, m, theta, omega) {
            None => Ok(f64::NAN),
            Some(t) => {
                let plan = TrotterPlan::new(opts.order, m, t, opts.hp)?;
                let run = run_trotter(&plan, &couplings, omega, &psi0, Some(&cfg.probe))?;
                Ok(*run.evolution.energies.last().expect("initial energy is recorded"))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    let trotter = energies.chunks(times.len()).map(<[f64]>::to_vec).collect();
    Ok(ComparisonTable {
        times: times.to_vec(),
        spiral,
        steps: opts.steps.clone(),
        trotter,
        coherence_time: coherence_time(omega),
    })
}
