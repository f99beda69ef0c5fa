// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Action of `exp(−iH dt)` on a vector without forming the exponential.
//!
//! The interval is split into `s` pieces with `‖H‖·|dt|/s ≤ 1` and each piece
//! is a truncated Taylor series, cut once two consecutive terms drop below
//! unit roundoff relative to the partial sum.

use num_complex::Complex64;

use super::operator::CompiledOperator;
use super::state::StateVector;
use crate::error::Result;
use crate::model::pauli::PauliSum;

const SUBSTEP_NORM: f64 = 1.0;
const TERM_TOL: f64 = f64::EPSILON / 2.0;
const MAX_TERMS: usize = 60;

/// Scratch space reused across many exponentials of the same dimension.
#[derive(Debug, Default)]
pub(crate) struct Workspace {
    term: Vec<Complex64>,
    next: Vec<Complex64>,
}

impl Workspace {
    fn ensure(&mut self, dim: usize) {
        if self.term.len() != dim {
            self.term = vec![Complex64::new(0.0, 0.0); dim];
            self.next = vec![Complex64::new(0.0, 0.0); dim];
        }
    }
}

/// Overwrites `v` with `exp(−i op dt) v`.
pub(crate) fn expm_action_in_place(op: &CompiledOperator, dt: f64, v: &mut [Complex64], ws: &mut Workspace) {
    if dt == 0.0 {
        return;
    }
    if op.is_diagonal() {
        for (a, d) in v.iter_mut().zip(op.diagonal()) {
            *a *= Complex64::from_polar(1.0, -(d + op.shift()) * dt);
        }
        return;
    }
    let s = ((op.norm_bound() * dt.abs()) / SUBSTEP_NORM).ceil().max(1.0) as usize;
    let h = dt / s as f64;
    // multiplying by −i h
    let factor = Complex64::new(0.0, -h);
    ws.ensure(v.len());
    for _ in 0..s {
        ws.term.copy_from_slice(v);
        let mut small_in_a_row = 0;
        for k in 1..=MAX_TERMS {
            op.apply_traceless_into(&ws.term, &mut ws.next);
            let scale = factor / k as f64;
            let mut term_norm = 0.0;
            let mut sum_norm = 0.0;
            for ((t, n), a) in ws.term.iter_mut().zip(&ws.next).zip(v.iter_mut()) {
                *t = n * scale;
                *a += *t;
                term_norm += t.norm_sqr();
                sum_norm += a.norm_sqr();
            }
            if term_norm <= TERM_TOL * TERM_TOL * sum_norm {
                small_in_a_row += 1;
                if small_in_a_row == 2 {
                    break;
                }
            } else {
                small_in_a_row = 0;
            }
        }
    }
    if op.shift() != 0.0 {
        let phase = Complex64::from_polar(1.0, -op.shift() * dt);
        v.iter_mut().for_each(|a| *a *= phase);
    }
}

/// `exp(−iH dt)|ψ⟩` for any real `dt`.
pub fn evolve_const(h: &PauliSum, dt: f64, psi: &StateVector) -> Result<StateVector> {
    let op = CompiledOperator::new(h)?;
    evolve_compiled(&op, dt, psi)
}

/// As [`evolve_const`] for an operator compiled once and reused.
pub fn evolve_compiled(op: &CompiledOperator, dt: f64, psi: &StateVector) -> Result<StateVector> {
    op.check(psi)?;
    let mut v = psi.amplitudes().to_vec();
    expm_action_in_place(op, dt, &mut v, &mut Workspace::default());
    Ok(StateVector::from_unitary_image(psi.nsites(), v))
}
