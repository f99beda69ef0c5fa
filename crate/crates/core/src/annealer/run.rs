// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Reverse-anneal emulation of the spiral on a transverse-field Ising annealer.
//!
//! The device Hamiltonian, in rad/μs with `A`, `B` in MHz, is
//!
//! `H/ħ = 2π [−(A/2) Σ X + (B/2)(h Σ s_j Z_j + Σ J_ij Z_iZ_j)]`.
//!
//! Flipping the `s = +1` sublattice with `V = Π X` turns the staggered field
//! uniform, which is the frame where the annealer reproduces the spiral. The
//! probe is therefore `V H_target V` and the default start is `V|Néel⟩`, the
//! all-up state.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::controls::AnnealSchedule;
use crate::engine::dense::Spectrum;
use crate::engine::evolve::{evolve_timedep, EvolutionOptions, EvolutionResult};
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::model::hamiltonians::heisenberg;
use crate::model::lattice::{Couplings, LatticeSpec};
use crate::model::pauli::{Axis, PauliString, PauliSum, TermAccumulator};

/// Typical absolute calibration error on programmed couplings.
pub const CALIBRATION_SIGMA: f64 = 4e-3;

/// `H/ħ` in rad/μs at time `t` for programmed couplings `couplings`.
pub fn build_dwave_hamiltonian(sched: &AnnealSchedule, couplings: &Couplings, t: f64) -> Result<PauliSum> {
    let (a, b) = sched.controls_at(t)?;
    let (a, b) = (2.0 * PI * a, 2.0 * PI * b);
    let n = couplings.nsites();
    let mut acc = TermAccumulator::new(n);
    for j in 0..n {
        acc.add(-a / 2.0, PauliString::single(j, Axis::X));
    }
    for (j, s) in couplings.stagger().iter().enumerate() {
        acc.add(b / 2.0 * sched.h * s, PauliString::single(j, Axis::Z));
    }
    for bond in couplings.bonds() {
        acc.add(b / 2.0 * bond.strength, PauliString::pair(bond.i, Axis::Z, bond.j, Axis::Z));
    }
    Ok(acc.finish())
}

/// Gaussian coupling noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingNoise {
    pub sigma: f64,
    pub seed: u64,
}

impl CouplingNoise {
    pub fn calibration(seed: u64) -> Self {
        Self {
            sigma: CALIBRATION_SIGMA,
            seed,
        }
    }

    /// Adds an independent `N(0, σ²)` draw to every bond.
    pub fn perturb(&self, c: &Couplings) -> Result<Couplings> {
        if !(self.sigma >= 0.0) {
            return Err(Error::InvalidArgument(format!("noise σ = {}", self.sigma)));
        }
        let normal = Normal::new(0.0, self.sigma)
            .map_err(|e| Error::InvalidArgument(format!("noise σ = {}: {e}", self.sigma)))?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let entries: Vec<(usize, usize, f64)> = c
            .bonds()
            .iter()
            .map(|b| (b.i, b.j, b.strength + normal.sample(&mut rng)))
            .collect();
        Couplings::new(c.nsites(), entries, c.stagger().to_vec())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnnealStart {
    /// `V|Néel⟩`, all spins up.
    #[default]
    FlippedNeel,
    /// The Néel pattern, ground state of the diagonal part.
    Neel,
}

#[derive(Clone, Debug)]
pub struct AnnealProblem {
    /// Geometry and programmed couplings; a comb's `j` sets the energy unit.
    pub spec: LatticeSpec,
    pub schedule: AnnealSchedule,
    pub start: AnnealStart,
    pub noise: Option<CouplingNoise>,
    pub options: EvolutionOptions,
}

impl AnnealProblem {
    pub fn new(spec: LatticeSpec, schedule: AnnealSchedule) -> Result<Self> {
        spec.validate()?;
        schedule.validate()?;
        Ok(Self {
            spec,
            schedule,
            start: AnnealStart::default(),
            noise: None,
            options: Self::default_options(),
        })
    }

    /// Looser than the engine default: the device Hamiltonian is three
    /// orders of magnitude stiffer than the couplings it probes.
    pub fn default_options() -> EvolutionOptions {
        EvolutionOptions {
            tol: 1e-4,
            samples: 51,
            initial_substeps: 16,
            max_steps: 1 << 22,
            ..Default::default()
        }
    }

    /// Coupling that sets the energy unit: the largest programmed `|J_ij|`.
    pub fn energy_unit(&self) -> f64 {
        self.spec
            .couplings()
            .bonds()
            .iter()
            .fold(0.0, |m, b| m.max(b.strength.abs()))
    }

    /// Target Heisenberg model in units of [`AnnealProblem::energy_unit`],
    /// in the frame of the simulation.
    pub fn probe(&self) -> Result<PauliSum> {
        let unit = self.energy_unit();
        if !(unit > 0.0) {
            return Err(Error::InvalidLattice("annealer couplings are all zero".into()));
        }
        let c = self.spec.couplings();
        Ok(heisenberg(&c.scaled(1.0 / unit)).conjugate_by_x(&flipped_sites(&c)))
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        let c = self.spec.couplings();
        let neel = StateVector::neel_for(&c)?;
        match self.start {
            AnnealStart::Neel => Ok(neel),
            AnnealStart::FlippedNeel => neel.apply_x(&flipped_sites(&c)),
        }
    }
}

/// Sites with staggering sign `+1`.
fn flipped_sites(c: &Couplings) -> Vec<usize> {
    c.stagger()
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > 0.0)
        .map(|(j, _)| j)
        .collect()
}

#[derive(Clone, Debug)]
pub struct AnnealOutcome {
    /// Times in μs, probe energies in units of `J`.
    pub evolution: EvolutionResult,
    /// Probe energy at every waypoint.
    pub waypoint_energies: Vec<f64>,
    pub initial_energy: f64,
    /// `|⟨ψ(0)|ψ(T)⟩|²`.
    pub return_overlap: f64,
    /// Lowest two levels of the probe.
    pub e0: f64,
    pub e1: f64,
}

impl AnnealOutcome {
    pub fn final_energy(&self) -> f64 {
        *self.waypoint_energies.last().expect("at least two waypoints")
    }

    pub fn min_energy(&self) -> f64 {
        self.evolution.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// CSV with columns `t_us,energy_J`.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["t_us", "energy_J"])?;
        for (t, e) in self.evolution.times.iter().zip(&self.evolution.energies) {
            out.write_record([format!("{t:?}"), format!("{e:?}")])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Evolves segment by segment between waypoints, so the kinks of `s(t)` fall
/// on step boundaries; `options.samples` applies per segment.
pub fn run_reverse_anneal(problem: &AnnealProblem) -> Result<AnnealOutcome> {
    problem.schedule.validate()?;
    let nominal = problem.spec.couplings();
    let programmed = match &problem.noise {
        Some(n) => n.perturb(&nominal)?,
        None => nominal,
    };
    let probe = problem.probe()?;
    let spectrum = Spectrum::new(&probe)?;
    let psi0 = problem.initial_state()?;
    let h_of_t = |t: f64| build_dwave_hamiltonian(&problem.schedule, &programmed, t);

    let initial_energy = crate::engine::operator::expectation(&probe, &psi0)?;
    let mut psi = psi0.clone();
    let mut times = vec![0.0];
    let mut energies = vec![initial_energy];
    let mut waypoint_energies = vec![initial_energy];
    let (mut steps, mut refinement) = (0, 0.0f64);
    for seg in problem.schedule.waypoints.windows(2) {
        let r = evolve_timedep(h_of_t, seg[0].time, seg[1].time, &psi, Some(&probe), &problem.options)?;
        times.extend_from_slice(&r.times[1..]);
        energies.extend_from_slice(&r.energies[1..]);
        waypoint_energies.push(*r.energies.last().expect("samples ≥ 2"));
        steps += r.steps;
        refinement = refinement.max(r.refinement);
        psi = r.final_state;
    }
    let return_overlap = psi0.overlap(&psi)?;
    Ok(AnnealOutcome {
        evolution: EvolutionResult {
            final_state: psi,
            times,
            energies,
            steps,
            refinement,
        },
        waypoint_energies,
        initial_energy,
        return_overlap,
        e0: spectrum.ground_energy(),
        e1: spectrum.first_excited_energy().unwrap_or(f64::NAN),
    })
}
