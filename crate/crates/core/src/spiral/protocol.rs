// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::engine::dense::Spectrum;
use crate::engine::evolve::{evolve_timedep, EvolutionOptions, EvolutionResult};
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::model::hamiltonians::{spiral_from_couplings, target_heisenberg, tilde_from_couplings};
use crate::model::lattice::LatticeSpec;
use crate::model::pauli::PauliSum;
use crate::model::schedule::Schedule;

/// Frame in which the spiral is run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    /// Start in the Néel state under the spiral Hamiltonian.
    #[default]
    NeelStart,
    /// Start in `|↓⟩^⊗n` under the flipped Hamiltonian; the flip is undone
    /// before probing.
    Flipped,
}

/// Everything needed for one spiral run.
#[derive(Clone, Debug)]
pub struct SpiralConfig {
    pub spec: LatticeSpec,
    pub sched: Schedule,
    pub basis: Basis,
    /// Operator whose expectation is reported; the target Heisenberg model
    /// by default.
    pub probe: PauliSum,
    pub options: EvolutionOptions,
}

impl SpiralConfig {
    pub fn new(spec: LatticeSpec, sched: Schedule) -> Result<Self> {
        let probe = target_heisenberg(&spec)?;
        let cfg = Self {
            spec,
            sched,
            basis: Basis::NeelStart,
            probe,
            options: EvolutionOptions::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_probe(mut self, probe: PauliSum) -> Result<Self> {
        self.probe = probe;
        self.validate()?;
        Ok(self)
    }

    pub fn with_options(mut self, options: EvolutionOptions) -> Self {
        self.options = options;
        self
    }

    pub fn with_schedule(&self, sched: Schedule) -> Self {
        Self {
            sched,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        self.sched.validate()?;
        self.options.validate()?;
        if self.probe.nsites() != self.spec.nsites() {
            return Err(Error::DimensionMismatch {
                expected: self.spec.nsites(),
                actual: self.probe.nsites(),
            });
        }
        Ok(())
    }
}

/// Result of one spiral.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpiralOutcome {
    /// Trajectory of probe energies; the final state is in the Néel frame.
    pub evolution: EvolutionResult,
    pub final_energy: f64,
    /// Weight of the final state in the probe's ground space.
    pub ground_overlap: f64,
}

/// Runs the spiral and compares against a fresh eigensolve of the probe.
pub fn run_spiral(cfg: &SpiralConfig) -> Result<SpiralOutcome> {
    let reference = Spectrum::new(&cfg.probe)?;
    run_spiral_with(cfg, &reference)
}

/// As [`run_spiral`] with a precomputed spectrum of the probe.
pub fn run_spiral_with(cfg: &SpiralConfig, reference: &Spectrum) -> Result<SpiralOutcome> {
    cfg.validate()?;
    let couplings = cfg.spec.couplings();
    let zz = cfg.spec.spiral_zz_prefactor();
    let t_end = cfg.sched.total_time;
    let evolution = match cfg.basis {
        Basis::NeelStart => {
            let psi0 = StateVector::neel_for(&couplings)?;
            evolve_timedep(
                |t| spiral_from_couplings(&couplings, zz, &cfg.sched, t),
                0.0,
                t_end,
                &psi0,
                Some(&cfg.probe),
                &cfg.options,
            )?
        }
        Basis::Flipped => {
            let flips = couplings.neel_up_sites();
            let psi0 = StateVector::all_down(couplings.nsites())?;
            // ⟨Xψ|P|Xψ⟩ = ⟨ψ|XPX|ψ⟩
            let probe = cfg.probe.conjugate_by_x(&flips);
            let mut r = evolve_timedep(
                |t| tilde_from_couplings(&couplings, zz, &cfg.sched, t),
                0.0,
                t_end,
                &psi0,
                Some(&probe),
                &cfg.options,
            )?;
            r.final_state = r.final_state.apply_x(&flips)?;
            r
        }
    };
    let final_energy = evolution.final_energy().expect("at least two samples");
    let ground_overlap = reference.ground_overlap(&evolution.final_state)?;
    Ok(SpiralOutcome {
        evolution,
        final_energy,
        ground_overlap,
    })
}
