// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Constructors for the Hamiltonians of the spiral and its alternatives.

use super::lattice::{Couplings, LatticeSpec};
use super::pauli::{Axis, PauliString, PauliSum, TermAccumulator};
use super::schedule::Schedule;
use crate::error::{Error, Result};

fn add_heisenberg_bond(acc: &mut TermAccumulator, i: usize, j: usize, w: f64) {
    for a in Axis::ALL {
        acc.add(w, PauliString::pair(i, a, j, a));
    }
}

/// `Σ_bonds J_ij (X_iX_j + Y_iY_j + Z_iZ_j)`.
pub fn heisenberg(couplings: &Couplings) -> PauliSum {
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        add_heisenberg_bond(&mut acc, b.i, b.j, b.strength);
    }
    acc.finish()
}

/// Open Heisenberg chain with `3(L − 1)` terms.
pub fn heisenberg_chain(length: usize, j: f64) -> Result<PauliSum> {
    Ok(heisenberg(&LatticeSpec::chain(length, j)?.couplings()))
}

/// Heisenberg comb: backbone bonds `J`, teeth `J_p`.
pub fn heisenberg_comb(spec: &LatticeSpec) -> Result<PauliSum> {
    match spec {
        LatticeSpec::Comb { .. } => {
            spec.validate()?;
            Ok(heisenberg(&spec.couplings()))
        }
        other => Err(Error::InvalidLattice(format!(
            "expected a comb, got {} sites of another kind",
            other.nsites()
        ))),
    }
}

/// Heisenberg target for any lattice kind.
pub fn target_heisenberg(spec: &LatticeSpec) -> Result<PauliSum> {
    spec.validate()?;
    Ok(heisenberg(&spec.couplings()))
}

/// Spiral Hamiltonian at time `t` from a Néel start:
///
/// `c·Σ J_ij Z_iZ_j + Σ_j [(Ω/2)(Z_j/√3 + f(t) X_j) + (h_P(t)/2) s_j Z_j]`
///
/// with `c = 1/4` on the comb and `1` otherwise, and `s_j` the staggering sign.
pub fn spiral_hamiltonian(spec: &LatticeSpec, sched: &Schedule, t: f64) -> Result<PauliSum> {
    spec.validate()?;
    spiral_from_couplings(&spec.couplings(), spec.spiral_zz_prefactor(), sched, t)
}

pub fn spiral_from_couplings(
    couplings: &Couplings,
    zz_prefactor: f64,
    sched: &Schedule,
    t: f64,
) -> Result<PauliSum> {
    sched.check_time(t)?;
    let n = couplings.nsites();
    let mut acc = TermAccumulator::new(n);
    for b in couplings.bonds() {
        acc.add(
            zz_prefactor * b.strength,
            PauliString::pair(b.i, Axis::Z, b.j, Axis::Z),
        );
    }
    let drive_z = sched.omega / (2.0 * 3f64.sqrt());
    let drive_x = 0.5 * sched.omega * sched.f(t);
    let hp = 0.5 * sched.penalty(t);
    for (j, s) in couplings.stagger().iter().enumerate() {
        acc.add(drive_z + hp * s, PauliString::single(j, Axis::Z));
        acc.add(drive_x, PauliString::single(j, Axis::X));
    }
    Ok(acc.finish())
}

/// The spiral in the flipped basis, `X_F H X_F` with `F` the Néel up sites,
/// written out directly: Ising couplings pick up `s_i s_j` (−1 on every
/// bipartite bond), the `Z/√3` drive becomes staggered and the penalty
/// uniform. Its natural initial state is `|↓⟩^⊗n`.
pub fn tilde_hamiltonian(spec: &LatticeSpec, sched: &Schedule, t: f64) -> Result<PauliSum> {
    spec.validate()?;
    tilde_from_couplings(&spec.couplings(), spec.spiral_zz_prefactor(), sched, t)
}

pub fn tilde_from_couplings(
    couplings: &Couplings,
    zz_prefactor: f64,
    sched: &Schedule,
    t: f64,
) -> Result<PauliSum> {
    sched.check_time(t)?;
    let s = couplings.stagger();
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        acc.add(
            zz_prefactor * b.strength * s[b.i] * s[b.j],
            PauliString::pair(b.i, Axis::Z, b.j, Axis::Z),
        );
    }
    let drive_z = sched.omega / (2.0 * 3f64.sqrt());
    let drive_x = 0.5 * sched.omega * sched.f(t);
    let hp = 0.5 * sched.penalty(t);
    for (j, sj) in s.iter().enumerate() {
        acc.add(drive_z * sj + hp, PauliString::single(j, Axis::Z));
        acc.add(drive_x, PauliString::single(j, Axis::X));
    }
    Ok(acc.finish())
}

/// Linear interpolation from Ising plus staggered penalty to isotropic
/// Heisenberg:
///
/// `Σ J_ij (Z_iZ_j + (t/T)(X_iX_j + Y_iY_j)) + h_P (1 − t/T) Σ s_i Z_i`.
pub fn linear_adiabatic(couplings: &Couplings, hp: f64, t: f64, total: f64) -> Result<PauliSum> {
    if !(total > 0.0) {
        return Err(Error::InvalidSchedule(format!("T = {total}")));
    }
    if !(0.0..=total).contains(&t) {
        return Err(Error::TimeOutOfRange {
            t,
            start: 0.0,
            end: total,
        });
    }
    let u = t / total;
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        acc.add(b.strength, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
        acc.add(u * b.strength, PauliString::pair(b.i, Axis::X, b.j, Axis::X));
        acc.add(u * b.strength, PauliString::pair(b.i, Axis::Y, b.j, Axis::Y));
    }
    for (j, s) in couplings.stagger().iter().enumerate() {
        acc.add(hp * (1.0 - u) * s, PauliString::single(j, Axis::Z));
    }
    Ok(acc.finish())
}

/// `Σ J_ij Z_iZ_j`, the always-on resource interaction.
pub fn ising(couplings: &Couplings) -> PauliSum {
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        acc.add(b.strength, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
    }
    acc.finish()
}

/// `Σ_j s_j Z_j`.
pub fn staggered_z(couplings: &Couplings) -> PauliSum {
    let mut acc = TermAccumulator::new(couplings.nsites());
    for (j, s) in couplings.stagger().iter().enumerate() {
        acc.add(*s, PauliString::single(j, Axis::Z));
    }
    acc.finish()
}

/// `Σ_j P_j` for a single axis.
pub fn uniform_field(nsites: usize, axis: Axis) -> PauliSum {
    let mut acc = TermAccumulator::new(nsites);
    for j in 0..nsites {
        acc.add(1.0, PauliString::single(j, axis));
    }
    acc.finish()
}
