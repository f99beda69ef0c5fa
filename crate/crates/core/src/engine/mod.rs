// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact state-vector mechanics.

pub mod dense;
pub mod evolve;
pub mod expm;
pub mod operator;
pub mod state;

pub use dense::{eigensolve_lowest, Spectrum, MAX_DENSE_SITES};
pub use evolve::{evolve_timedep, evolve_timedep_reverse, EvolutionOptions, EvolutionResult, Integrator};
pub use expm::{evolve_compiled, evolve_const};
pub use operator::{apply_pauli_sum, expectation, CompiledOperator};
pub use state::{StateVector, MAX_STATE_SITES};
