// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Stroboscopic accuracy of the driven Ising model as a Heisenberg simulator.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::engine::dense::{expm_hermitian, operator_norm, to_dense};
use crate::error::{Error, Result};
use crate::model::lattice::{Couplings, LatticeSpec};
use crate::model::pauli::{Axis, PauliString, PauliSum};
use crate::model::pauli::TermAccumulator;

/// Drive tilt with `cos θ = 1/√3`, where the effective model is isotropic.
pub fn spiral_theta() -> f64 {
    (1.0 / 3f64.sqrt()).acos()
}

/// [`floquet_deviation_with_penalty`] without a penalty field.
pub fn floquet_deviation(spec: &LatticeSpec, theta: f64, omega: f64) -> Result<f64> {
    spec.validate()?;
    floquet_deviation_with_penalty(&spec.couplings(), theta, omega, None)
}

/// Operator-norm distance between one drive period `τ = 2π/Ω` of
///
/// `Σ J_ij Z_iZ_j + Σ_j [(Ω/2)(cos θ Z_j + sin θ X_j) + (h_j/2) Z_j]`
///
/// and `(−1)ⁿ U_B† exp(−iτ H_eff) U_B` with `U_B = Π_j exp(iθY_j/2)` and
///
/// `H_eff = Σ J_ij [cos²θ Z_iZ_j + (sin²θ/2)(X_iX_j + Y_iY_j)] + Σ_j (cos θ h_j/2) Z_j`.
///
/// The sign `(−1)ⁿ` is the exact single-spin phase `exp(−iπ n̂·σ) = −1` per
/// site accumulated by the drive over one period.
pub fn floquet_deviation_with_penalty(
    couplings: &Couplings,
    theta: f64,
    omega: f64,
    penalty: Option<&[f64]>,
) -> Result<f64> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidArgument(format!("Ω = {omega}")));
    }
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!("θ = {theta}")));
    }
    let n = couplings.nsites();
    let zeros = vec![0.0; n];
    let hp = penalty.unwrap_or(&zeros);
    if hp.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: hp.len(),
        });
    }
    let (c, s) = (theta.cos(), theta.sin());
    let mut ising = TermAccumulator::new(n);
    let mut eff = TermAccumulator::new(n);
    let mut basis = TermAccumulator::new(n);
    for b in couplings.bonds() {
        ising.add(b.strength, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
        eff.add(b.strength * c * c, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
        for a in [Axis::X, Axis::Y] {
            eff.add(b.strength * s * s / 2.0, PauliString::pair(b.i, a, b.j, a));
        }
    }
    for (j, h) in hp.iter().enumerate() {
        ising.add(0.5 * omega * c + 0.5 * h, PauliString::single(j, Axis::Z));
        ising.add(0.5 * omega * s, PauliString::single(j, Axis::X));
        eff.add(0.5 * c * h, PauliString::single(j, Axis::Z));
        // exp(iθY/2) = exp(−i·(−θ/2)Y)
        basis.add(-0.5 * theta, PauliString::single(j, Axis::Y));
    }
    let tau = 2.0 * PI / omega;
    let u_drive = expm_hermitian(&to_dense(&ising.finish())?, tau);
    let u_b = expm_hermitian(&to_dense(&basis.finish())?, 1.0);
    let u_eff = expm_hermitian(&to_dense(&eff.finish())?, tau);
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let target = u_b.adjoint() * u_eff * &u_b * Complex64::new(sign, 0.0);
    Ok(operator_norm(&(u_drive - target)))
}

/// `H_eff` of [`floquet_deviation_with_penalty`] at zero penalty, as a Pauli sum.
pub fn effective_heisenberg(couplings: &Couplings, theta: f64) -> PauliSum {
    let (c, s) = (theta.cos(), theta.sin());
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        acc.add(b.strength * c * c, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
        for a in [Axis::X, Axis::Y] {
            acc.add(b.strength * s * s / 2.0, PauliString::pair(b.i, a, b.j, a));
        }
    }
    acc.finish()
}
