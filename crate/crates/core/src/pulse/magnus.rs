// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Leading-order Magnus diagnostics for gate words.
//!
//! A word `W(ε)` of gates factors as `W = R · exp(−i(ε υ₁ + O(ε²)))`, where
//! `R` is the same word with the interaction switched off. [`first_order_generator`]
//! computes `υ₁` in the toggling frame and [`verify_pulse_bias`] checks it
//! against the exact logarithm of `R†W`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gates::{AnalogGate, PulseSequence};
use crate::engine::dense::{expm_hermitian, operator_norm, pauli_decompose, to_dense, unitary_generator, CMatrix};
use crate::error::{Error, Result};
use crate::model::lattice::Couplings;
use crate::model::pauli::{Axis, PauliString, PauliSum, TermAccumulator};
use crate::optim::loglog_slope;

/// Pauli coefficients below this are dropped when decomposing generators.
const DECOMPOSE_CUTOFF: f64 = 1e-14;
/// Eigenphases this close to `±π` make the logarithm ambiguous.
const BRANCH_MARGIN: f64 = 1e-3;

/// Closed-form first Magnus term for the first `η` of an `R⁺_Y` pulse, per unit
/// `ε` and summed over bonds:
///
/// `Σ J [η(ZZ + XX)/2 − sin²(πη/2)(XZ + ZX)/π + sin(πη)/π · (ZZ − XX)/2]`.
pub fn magnus_leading(eta: f64, couplings: &Couplings) -> Result<PauliSum> {
    if !(0.0..=2.0).contains(&eta) {
        return Err(Error::InvalidArgument(format!("η = {eta} outside [0, 2]")));
    }
    let diag = eta / 2.0;
    let osc = (PI * eta).sin() / PI / 2.0;
    let mixed = -(PI * eta / 2.0).sin().powi(2) / PI;
    let mut acc = TermAccumulator::new(couplings.nsites());
    for b in couplings.bonds() {
        let pair = |a, c| PauliString::pair(b.i, a, b.j, c);
        acc.add(b.strength * (diag + osc), pair(Axis::Z, Axis::Z));
        acc.add(b.strength * (diag - osc), pair(Axis::X, Axis::X));
        acc.add(b.strength * mixed, pair(Axis::X, Axis::Z));
        acc.add(b.strength * mixed, pair(Axis::Z, Axis::X));
    }
    Ok(acc.finish())
}

/// `∫₀¹ e^{iBs} A e^{−iBs} ds`, exactly, in the eigenbasis of `B`.
fn frame_average(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let eig = nalgebra::SymmetricEigen::new(b.clone());
    let v = &eig.eigenvectors;
    let mut m = v.adjoint() * a * v;
    for p in 0..m.nrows() {
        for q in 0..m.ncols() {
            let w = eig.eigenvalues[p] - eig.eigenvalues[q];
            if w.abs() > 1e-12 {
                m[(p, q)] *= (Complex64::new(0.0, w).exp() - 1.0) / Complex64::new(0.0, w);
            }
        }
    }
    v * m * v.adjoint()
}

/// Dense `υ₁` of a word, normalized by its pulse length `ε`.
fn first_order_matrix(seq: &PulseSequence) -> Result<CMatrix> {
    let eps = seq.epsilon();
    let dim = 1usize << seq.couplings.nsites();
    let mut frame = CMatrix::identity(dim, dim);
    let mut total = CMatrix::zeros(dim, dim);
    for g in &seq.gates {
        let b = to_dense(&g.ideal_generator(&seq.couplings))?;
        let a = to_dense(&g.interaction_generator(&seq.couplings))? / Complex64::new(eps, 0.0);
        total += frame.adjoint() * frame_average(&a, &b) * &frame;
        frame = expm_hermitian(&b, 1.0) * frame;
    }
    Ok(total)
}

/// Leading generator `υ₁` of a word in units of its pulse length, so that
/// `R† W = exp(−i ε υ₁ + O(ε²))`.
pub fn first_order_generator(seq: &PulseSequence) -> Result<PauliSum> {
    pauli_decompose(&first_order_matrix(seq)?, seq.couplings.nsites(), DECOMPOSE_CUTOFF)
}

/// Exact generator `G` of `R† W = exp(−iG)`.
pub fn word_generator(seq: &PulseSequence) -> Result<PauliSum> {
    pauli_decompose(&exact_generator(seq)?, seq.couplings.nsites(), DECOMPOSE_CUTOFF)
}

fn exact_generator(seq: &PulseSequence) -> Result<CMatrix> {
    let bias = seq.ideal_unitary()?.adjoint() * seq.unitary()?;
    unitary_generator(&bias, BRANCH_MARGIN)
}

/// Outcome of [`verify_pulse_bias`].
#[derive(Clone, Debug)]
pub struct PulseBias {
    pub epsilons: Vec<f64>,
    /// `‖G(ε) − ε υ₁‖` in operator norm.
    pub residuals: Vec<f64>,
    /// Fitted exponent `p` in `residual ∝ εᵖ`.
    pub order: f64,
    /// `υ₁` per unit `ε`.
    pub leading: PauliSum,
}

/// Checks that a word's bias is `ε υ₁` up to higher orders. `word(ε)` must
/// build the sequence for pulse length `ε`.
pub fn verify_pulse_bias<F>(word: F, epsilons: &[f64]) -> Result<PulseBias>
where
    F: Fn(f64) -> Result<PulseSequence>,
{
    if epsilons.len() < 2 {
        return Err(Error::InvalidArgument("need at least two values of ε".into()));
    }
    if epsilons.iter().any(|e| !(*e > 0.0)) {
        return Err(Error::InvalidArgument("ε must be positive".into()));
    }
    let mut residuals = Vec::with_capacity(epsilons.len());
    let mut leading = None;
    for &eps in epsilons {
        let seq = word(eps)?;
        if (seq.epsilon() - eps).abs() > 1e-12 * eps {
            return Err(Error::InvalidArgument(format!(
                "word built for ε = {eps} has pulses of length {}",
                seq.epsilon()
            )));
        }
        let v1 = first_order_matrix(&seq)?;
        let g = exact_generator(&seq)?;
        residuals.push(operator_norm(&(g - &v1 * Complex64::new(eps, 0.0))));
        if leading.is_none() {
            leading = Some(pauli_decompose(&v1, seq.couplings.nsites(), DECOMPOSE_CUTOFF)?);
        }
    }
    let order = loglog_slope(epsilons, &residuals)?;
    Ok(PulseBias {
        epsilons: epsilons.to_vec(),
        residuals,
        order,
        leading: leading.expect("at least two ε"),
    })
}

/// Standard words, written in application order.
pub mod words {
    use super::*;

    fn build(c: &Couplings, eps: f64, gates: Vec<AnalogGate>) -> Result<PulseSequence> {
        PulseSequence::new(gates, c.clone(), PI / (2.0 * eps))
    }

    /// A single `R⁺_Y`.
    pub fn ry_plus(c: &Couplings, eps: f64) -> Result<PulseSequence> {
        build(c, eps, vec![AnalogGate::ry_plus(eps)])
    }

    /// `(R⁺_Y)²`, a π pulse.
    pub fn y_pi(c: &Couplings, eps: f64) -> Result<PulseSequence> {
        build(c, eps, vec![AnalogGate::ry_plus(eps); 2])
    }

    /// `(R⁺_X)²(R⁺_Y)²`: XXZ block with weights `XX + YY + 2ZZ`.
    pub fn xxz(c: &Couplings, eps: f64) -> Result<PulseSequence> {
        let y = AnalogGate::ry_plus(eps);
        let x = AnalogGate::rx_plus(eps);
        build(c, eps, vec![y, y, x, x])
    }

    /// `(R⁺_X R_Z(ε,0) R⁺_X)(R⁺_Y R_Z(ε,0) R⁺_Y)`: isotropic block `2(XX + YY + ZZ)`.
    pub fn xxx(c: &Couplings, eps: f64) -> Result<PulseSequence> {
        let y = AnalogGate::ry_plus(eps);
        let x = AnalogGate::rx_plus(eps);
        let z = AnalogGate::rz(eps, 0.0);
        build(c, eps, vec![y, z, y, x, z, x])
    }

    /// `R⁻_Y R⁺_X R_Z(ε,0) R⁺_X R⁺_Y`, the core of the second-order step.
    pub fn second_order_core(c: &Couplings, eps: f64) -> Result<PulseSequence> {
        build(
            c,
            eps,
            vec![
                AnalogGate::ry_plus(eps),
                AnalogGate::rx_plus(eps),
                AnalogGate::rz(eps, 0.0),
                AnalogGate::rx_plus(eps),
                AnalogGate::ry_minus(eps),
            ],
        )
    }
}
