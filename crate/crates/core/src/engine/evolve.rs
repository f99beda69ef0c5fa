// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-ordered evolution under a time-dependent Hamiltonian.
//!
//! The window `[t0, t1]` is cut into `samples − 1` equal intervals, each
//! split into `k` steps. Each step is an exact exponential of a frozen
//! Hamiltonian (or two, for the fourth-order scheme), so every step is
//! unitary. `k` doubles until two successive refinements give final states
//! within `tol` of each other.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::expm::{expm_action_in_place, Workspace};
use super::operator::CompiledOperator;
use super::state::StateVector;
use crate::error::{Error, Result};
use crate::model::pauli::PauliSum;

/// Exponential integrator used for each step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// `exp(−i h H(t + h/2))`; second order.
    Midpoint,
    /// Two exponentials of Gauss-node combinations; fourth order.
    #[default]
    Magnus4,
}

impl Integrator {
    pub fn order(self) -> u32 {
        match self {
            Integrator::Midpoint => 2,
            Integrator::Magnus4 => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolutionOptions {
    /// Acceptance threshold on `‖ψ_k − ψ_2k‖`.
    pub tol: f64,
    /// Number of uniformly spaced probe times, endpoints included.
    pub samples: usize,
    /// Steps per sampling interval on the first attempt.
    pub initial_substeps: usize,
    /// Cap on the total number of steps of a single attempt.
    pub max_steps: usize,
    pub integrator: Integrator,
}

impl Default for EvolutionOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            samples: 200,
            initial_substeps: 1,
            max_steps: 1 << 18,
            integrator: Integrator::Magnus4,
        }
    }
}

impl EvolutionOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tol = {}", self.tol)));
        }
        if self.samples < 2 {
            return Err(Error::InvalidArgument(format!("{} samples; need at least 2", self.samples)));
        }
        if self.initial_substeps == 0 || self.max_steps == 0 {
            return Err(Error::InvalidArgument("step counts must be positive".into()));
        }
        Ok(())
    }
}

/// Final state plus the probe-energy trajectory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EvolutionResult {
    pub final_state: StateVector,
    pub times: Vec<f64>,
    pub energies: Vec<f64>,
    pub steps: usize,
    /// `‖ψ_k − ψ_2k‖` of the accepted refinement.
    pub refinement: f64,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    times: &'a [f64],
    energies: &'a [f64],
    steps: usize,
    refinement: f64,
    nsites: usize,
    final_energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<&'a [Complex64]>,
}

impl EvolutionResult {
    pub fn final_energy(&self) -> Option<f64> {
        self.energies.last().copied()
    }

    /// Writes the trajectory as CSV with columns `t,energy`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t", "energy"])?;
        for (t, e) in self.times.iter().zip(&self.energies) {
            out.write_record([format!("{t:?}"), format!("{e:?}")])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Metadata, trajectory and (optionally) the final amplitudes as JSON.
    pub fn to_json(&self, with_amplitudes: bool) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(JsonRecord {
            times: &self.times,
            energies: &self.energies,
            steps: self.steps,
            refinement: self.refinement,
            nsites: self.final_state.nsites(),
            final_energy: self.final_energy(),
            amplitudes: with_amplitudes.then(|| self.final_state.amplitudes()),
        })?)
    }
}

// Gauss–Legendre nodes and the commutator-free weights of the
// fourth-order exponential scheme.
const SQRT3: f64 = 1.732_050_807_568_877_2;
const C1: f64 = 0.5 - SQRT3 / 6.0;
const C2: f64 = 0.5 + SQRT3 / 6.0;
const A1: f64 = (3.0 - 2.0 * SQRT3) / 12.0;
const A2: f64 = (3.0 + 2.0 * SQRT3) / 12.0;

struct Attempt {
    state: Vec<Complex64>,
    energies: Vec<f64>,
    steps: usize,
}

fn run_attempt<F>(
    h_of_t: &F,
    t0: f64,
    t1: f64,
    psi0: &StateVector,
    probe: Option<&CompiledOperator>,
    opts: &EvolutionOptions,
    substeps: usize,
) -> Result<Attempt>
where
    F: Fn(f64) -> Result<PauliSum>,
{
    let n = psi0.nsites();
    let intervals = opts.samples - 1;
    let total = intervals * substeps;
    let h = (t1 - t0) / total as f64;
    let mut v = psi0.amplitudes().to_vec();
    let mut ws = Workspace::default();
    let mut energies = Vec::with_capacity(opts.samples);
    let measure = |v: &[Complex64]| -> Result<f64> {
        match probe {
            Some(p) => p.expectation(&StateVector::from_unitary_image(n, v.to_vec())),
            None => Ok(f64::NAN),
        }
    };
    energies.push(measure(&v)?);
    for step in 0..total {
        let ts = t0 + step as f64 * h;
        match opts.integrator {
            Integrator::Midpoint => {
                let op = compile(h_of_t(ts + 0.5 * h)?, n)?;
                expm_action_in_place(&op, h, &mut v, &mut ws);
            }
            Integrator::Magnus4 => {
                let h1 = h_of_t(ts + C1 * h)?;
                let h2 = h_of_t(ts + C2 * h)?;
                let first = compile(PauliSum::linear_combination(A2, &h1, A1, &h2), n)?;
                let second = compile(PauliSum::linear_combination(A1, &h1, A2, &h2), n)?;
                expm_action_in_place(&first, h, &mut v, &mut ws);
                expm_action_in_place(&second, h, &mut v, &mut ws);
            }
        }
        if (step + 1) % substeps == 0 {
            energies.push(measure(&v)?);
        }
    }
    Ok(Attempt {
        state: v,
        energies,
        steps: total,
    })
}

fn compile(h: PauliSum, nsites: usize) -> Result<CompiledOperator> {
    if h.nsites() != nsites {
        return Err(Error::DimensionMismatch {
            expected: nsites,
            actual: h.nsites(),
        });
    }
    CompiledOperator::new(&h)
}

/// Time-ordered evolution `T exp(−i∫H(t)dt)|ψ₀⟩` from `t0` to `t1 > t0`.
///
/// `probe` is measured at `opts.samples` uniform times (the energies are NaN
/// without a probe). Fails with [`Error::NonConvergence`] once doubling
/// would exceed `opts.max_steps`.
pub fn evolve_timedep<F>(
    h_of_t: F,
    t0: f64,
    t1: f64,
    psi0: &StateVector,
    probe: Option<&PauliSum>,
    opts: &EvolutionOptions,
) -> Result<EvolutionResult>
where
    F: Fn(f64) -> Result<PauliSum>,
{
    opts.validate()?;
    if !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidArgument(format!("time window [{t0}, {t1}]")));
    }
    let probe = probe.map(|p| compile(p.clone(), psi0.nsites())).transpose()?;
    let intervals = opts.samples - 1;
    let mut substeps = opts.initial_substeps;
    if intervals * substeps > opts.max_steps {
        return Err(Error::NonConvergence {
            steps: intervals * substeps,
            delta: f64::INFINITY,
        });
    }
    let mut coarse = run_attempt(&h_of_t, t0, t1, psi0, probe.as_ref(), opts, substeps)?;
    let mut last_delta = f64::INFINITY;
    loop {
        let finer = substeps * 2;
        if intervals * finer > opts.max_steps {
            return Err(Error::NonConvergence {
                steps: coarse.steps,
                delta: last_delta,
            });
        }
        let fine = run_attempt(&h_of_t, t0, t1, psi0, probe.as_ref(), opts, finer)?;
        let delta = coarse
            .state
            .iter()
            .zip(&fine.state)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if delta <= opts.tol {
            let times = (0..opts.samples)
                .map(|k| t0 + (t1 - t0) * k as f64 / intervals as f64)
                .collect();
            return Ok(EvolutionResult {
                final_state: StateVector::from_unitary_image(psi0.nsites(), fine.state),
                times,
                energies: fine.energies,
                steps: fine.steps,
                refinement: delta,
            });
        }
        coarse = fine;
        substeps = finer;
        last_delta = delta;
    }
}

/// Undoes [`evolve_timedep`]: applies `U(t1, t0)†` by evolving under
/// `−H(t0 + t1 − s)` for `s` from `t0` to `t1`. The probe times run backwards.
pub fn evolve_timedep_reverse<F>(
    h_of_t: F,
    t0: f64,
    t1: f64,
    psi1: &StateVector,
    probe: Option<&PauliSum>,
    opts: &EvolutionOptions,
) -> Result<EvolutionResult>
where
    F: Fn(f64) -> Result<PauliSum>,
{
    let mut r = evolve_timedep(
        |s| Ok(h_of_t((t0 + t1 - s).clamp(t0, t1))?.scaled(-1.0)),
        t0,
        t1,
        psi1,
        probe,
        opts,
    )?;
    r.times.iter_mut().for_each(|t| *t = t0 + t1 - *t);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::expm::evolve_const;
    use crate::engine::operator::expectation;
    use crate::model::hamiltonians::heisenberg_chain;
    use crate::model::pauli::{Axis, PauliString};

    fn driven(t: f64) -> Result<PauliSum> {
        let mut h = heisenberg_chain(3, 1.0)?;
        let drive = PauliSum::from_terms(
            3,
            vec![
                (0.8 * (1.3 * t).cos(), PauliString::single(0, Axis::X)),
                (0.5 * t, PauliString::single(2, Axis::Y)),
            ],
        )?;
        h = &h + &drive;
        Ok(h)
    }

    #[test]
    fn constant_hamiltonian_matches_single_exponential() {
        let h = heisenberg_chain(4, 1.0).unwrap();
        let h = &h + &PauliSum::from_terms(4, vec![(0.6, PauliString::single(1, Axis::X))]).unwrap();
        let psi = StateVector::neel(4).unwrap();
        let opts = EvolutionOptions {
            samples: 5,
            ..Default::default()
        };
        for integrator in [Integrator::Midpoint, Integrator::Magnus4] {
            let opts = EvolutionOptions { integrator, ..opts.clone() };
            let r = evolve_timedep(|_| Ok(h.clone()), 0.0, 2.0, &psi, Some(&h), &opts).unwrap();
            let exact = evolve_const(&h, 2.0, &psi).unwrap();
            assert!(r.final_state.distance(&exact).unwrap() < 1e-11);
            assert_eq!(r.times.len(), r.energies.len());
            let e0 = expectation(&h, &psi).unwrap();
            assert!(r.energies.iter().all(|e| (e - e0).abs() < 1e-10));
        }
    }

    #[test]
    fn integrators_agree_and_converge() {
        let psi = StateVector::neel(3).unwrap();
        let probe = heisenberg_chain(3, 1.0).unwrap();
        let base = EvolutionOptions {
            samples: 11,
            tol: 1e-9,
            ..Default::default()
        };
        let m4 = evolve_timedep(driven, 0.0, 3.0, &psi, Some(&probe), &base).unwrap();
        let mid = evolve_timedep(
            driven,
            0.0,
            3.0,
            &psi,
            Some(&probe),
            &EvolutionOptions {
                integrator: Integrator::Midpoint,
                ..base.clone()
            },
        )
        .unwrap();
        assert!(m4.final_state.distance(&mid.final_state).unwrap() < 1e-8);
        assert!(mid.steps > m4.steps);
        assert!(m4.refinement <= 1e-9);
    }

    #[test]
    fn round_trip_through_reverse() {
        let psi = StateVector::neel(3).unwrap();
        let opts = EvolutionOptions {
            samples: 6,
            tol: 1e-10,
            ..Default::default()
        };
        let fwd = evolve_timedep(driven, 0.5, 2.5, &psi, None, &opts).unwrap();
        let back = evolve_timedep_reverse(driven, 0.5, 2.5, &fwd.final_state, None, &opts).unwrap();
        assert!(back.final_state.distance(&psi).unwrap() < 1e-9);
        assert_eq!(back.times[0], 2.5);
        assert!((fwd.final_state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn step_cap_reports_non_convergence() {
        let psi = StateVector::neel(3).unwrap();
        let opts = EvolutionOptions {
            samples: 3,
            tol: 1e-14,
            max_steps: 16,
            integrator: Integrator::Midpoint,
            ..Default::default()
        };
        let err = evolve_timedep(driven, 0.0, 5.0, &psi, None, &opts).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { .. }));
    }

    #[test]
    fn invalid_windows_and_options() {
        let psi = StateVector::neel(3).unwrap();
        let opts = EvolutionOptions::default();
        assert!(evolve_timedep(driven, 1.0, 1.0, &psi, None, &opts).is_err());
        let bad = EvolutionOptions { samples: 1, ..opts };
        assert!(evolve_timedep(driven, 0.0, 1.0, &psi, None, &bad).is_err());
    }

    #[test]
    fn csv_has_header_and_full_precision() {
        let h = heisenberg_chain(2, 1.0).unwrap();
        let psi = StateVector::neel(2).unwrap();
        let opts = EvolutionOptions {
            samples: 3,
            ..Default::default()
        };
        let r = evolve_timedep(|_| Ok(h.clone()), 0.0, 0.1, &psi, Some(&h), &opts).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,energy"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(row, vec![0.0, -1.0]);
        let json = r.to_json(true).unwrap();
        assert_eq!(json["amplitudes"].as_array().unwrap().len(), 4);
        assert!(r.to_json(false).unwrap().get("amplitudes").is_none());
    }
}
