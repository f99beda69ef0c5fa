// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Pauli algebra, lattices, schedules and Hamiltonian constructors.

pub mod hamiltonians;
pub mod lattice;
pub mod pauli;
pub mod schedule;

pub use hamiltonians::*;
pub use lattice::{chain_stagger, comb_rydberg_layout, rydberg_couplings, Bond, Couplings, LatticeSpec};
pub use pauli::{Axis, PauliString, PauliSum, Phase};
pub use schedule::{f_final, PathShape, Schedule};
