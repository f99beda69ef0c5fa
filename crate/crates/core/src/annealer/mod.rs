// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Spiral emulation on a transverse-field Ising annealer.

pub mod run;
pub mod controls;

pub use run::{
    build_dwave_hamiltonian, run_reverse_anneal, AnnealOutcome, AnnealProblem, AnnealStart, CouplingNoise,
    CALIBRATION_SIGMA,
};
pub use controls::{find_s_star, AnnealSchedule, AnnealTable, Waypoint, SYNTHETIC_SCALE_MHZ};
