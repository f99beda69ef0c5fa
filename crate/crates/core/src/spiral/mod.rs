// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! The adiabatic spiral: runs, sweeps, the Floquet check and optimizers.

pub mod floquet;
pub mod optimize;
pub mod protocol;
pub mod sweep;

pub use floquet::{floquet_deviation, floquet_deviation_with_penalty, spiral_theta};
pub use optimize::{
    optimize_path, optimize_path_with, optimize_penalty, optimize_penalty_with, project_betas, PathOptimum,
    PathSearch, PenaltyOptimum, PenaltySearch,
};
pub use protocol::{run_spiral, run_spiral_with, Basis, SpiralConfig, SpiralOutcome};
pub use sweep::{sweep_omega, sweep_time, sweep_with, SweepPoint, SweepResult};
