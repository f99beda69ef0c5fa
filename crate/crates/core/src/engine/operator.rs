// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::state::{check_sites, StateVector, MAX_STATE_SITES};
use crate::error::{Error, Result};
use crate::model::pauli::PauliSum;

/// Terms sharing one bit-flip mask, folded into a diagonal weight vector.
#[derive(Clone, Debug)]
struct FlipGroup {
    x: usize,
    weights: Vec<Complex64>,
}

/// A `PauliSum` laid out for repeated matrix-free application.
///
/// Every Pauli string maps `|b⟩` to a multiple of `|b ⊕ x⟩`, so terms with the
/// same `x` collapse into a single vector `d` and `H|ψ⟩ = Σ_x Σ_b d_x[b] ψ[b] |b ⊕ x⟩`.
/// Identity terms are kept apart as a scalar shift.
#[derive(Clone, Debug)]
pub struct CompiledOperator {
    nsites: usize,
    shift: f64,
    groups: Vec<FlipGroup>,
    row_bound: f64,
}

impl CompiledOperator {
    pub fn new(h: &PauliSum) -> Result<Self> {
        let nsites = h.nsites();
        check_sites(nsites, MAX_STATE_SITES)?;
        let dim = 1usize << nsites;
        let mut shift = 0.0;
        let mut groups: Vec<FlipGroup> = Vec::new();
        for (c, p) in h.terms() {
            if p.is_identity() {
                shift += c * p.phase().to_complex().re;
                continue;
            }
            let (x, z, ny) = p.masks();
            let (x, z) = (x as usize, z as usize);
            let base = Complex64::new(*c, 0.0) * p.phase().to_complex() * Complex64::i().powu(ny);
            let idx = match groups.iter().position(|g| g.x == x) {
                Some(i) => i,
                None => {
                    groups.push(FlipGroup {
                        x,
                        weights: vec![Complex64::new(0.0, 0.0); dim],
                    });
                    groups.len() - 1
                }
            };
            for (b, w) in groups[idx].weights.iter_mut().enumerate() {
                if (b & z).count_ones() % 2 == 0 {
                    *w += base;
                } else {
                    *w -= base;
                }
            }
        }
        groups.sort_by_key(|g| g.x);
        let row_bound = (0..dim)
            .map(|b| groups.iter().map(|g| g.weights[b].norm()).sum::<f64>())
            .fold(0.0, f64::max);
        Ok(Self {
            nsites,
            shift,
            groups,
            row_bound,
        })
    }

    pub fn nsites(&self) -> usize {
        self.nsites
    }

    pub fn dim(&self) -> usize {
        1 << self.nsites
    }

    /// Coefficient of the identity.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    /// True when the non-identity part has no bit flips.
    pub fn is_diagonal(&self) -> bool {
        self.groups.iter().all(|g| g.x == 0)
    }

    /// Induced ∞-norm of the operator without its identity part; bounds the
    /// spectral norm since the matrix is Hermitian.
    pub fn norm_bound(&self) -> f64 {
        self.row_bound
    }

    /// Diagonal of the non-identity part (zero if it has no diagonal terms).
    pub(crate) fn diagonal(&self) -> Vec<f64> {
        match self.groups.first() {
            Some(g) if g.x == 0 => g.weights.iter().map(|w| w.re).collect(),
            _ => vec![0.0; self.dim()],
        }
    }

    /// `out = (H − shift)·v`, overwriting `out`.
    pub(crate) fn apply_traceless_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for g in &self.groups {
            if g.x == 0 {
                for ((o, w), a) in out.iter_mut().zip(&g.weights).zip(v) {
                    *o += w * a;
                }
            } else {
                for (b, (w, a)) in g.weights.iter().zip(v).enumerate() {
                    out[b ^ g.x] += w * a;
                }
            }
        }
    }

    /// `H·v` for a raw amplitude vector.
    pub fn apply_raw(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        self.apply_traceless_into(v, &mut out);
        if self.shift != 0.0 {
            for (o, a) in out.iter_mut().zip(v) {
                *o += self.shift * a;
            }
        }
        Ok(out)
    }

    pub fn apply(&self, psi: &StateVector) -> Result<Vec<Complex64>> {
        self.check(psi)?;
        self.apply_raw(psi.amplitudes())
    }

    /// `⟨ψ|H|ψ⟩` with a Hermiticity check on the imaginary part.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        let hv = self.apply(psi)?;
        let e: Complex64 = psi
            .amplitudes()
            .iter()
            .zip(&hv)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let tol = IMAG_TOL * (1.0 + self.row_bound + self.shift.abs());
        if e.im.abs() > tol {
            return Err(Error::ImaginaryExpectation(e.im));
        }
        Ok(e.re)
    }

    pub(crate) fn check(&self, psi: &StateVector) -> Result<()> {
        if psi.nsites() != self.nsites {
            return Err(Error::DimensionMismatch {
                expected: self.nsites,
                actual: psi.nsites(),
            });
        }
        Ok(())
    }
}

const IMAG_TOL: f64 = 1e-10;

/// `H|ψ⟩` without forming the matrix. The result is not normalized.
pub fn apply_pauli_sum(h: &PauliSum, psi: &StateVector) -> Result<Vec<Complex64>> {
    if h.nsites() != psi.nsites() {
        return Err(Error::DimensionMismatch {
            expected: h.nsites(),
            actual: psi.nsites(),
        });
    }
    CompiledOperator::new(h)?.apply(psi)
}

/// `⟨ψ|H|ψ⟩`.
pub fn expectation(h: &PauliSum, psi: &StateVector) -> Result<f64> {
    if h.nsites() != psi.nsites() {
        return Err(Error::DimensionMismatch {
            expected: h.nsites(),
            actual: psi.nsites(),
        });
    }
    CompiledOperator::new(h)?.expectation(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::hamiltonians::heisenberg_chain;
    use crate::model::pauli::{Axis, PauliString};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_flips_basis_state() {
        let h = PauliSum::from_terms(1, vec![(1.0, PauliString::single(0, Axis::X))]).unwrap();
        let out = apply_pauli_sum(&h, &StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(out, vec![c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn repeated_terms_merge() {
        let z = PauliString::single(0, Axis::Z);
        let h = PauliSum::from_terms(1, vec![(1.0, z.clone()), (1.0, z)]).unwrap();
        let out = apply_pauli_sum(&h, &StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(out, vec![c(2.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn y_acts_with_phase() {
        let h = PauliSum::from_terms(1, vec![(1.0, PauliString::single(0, Axis::Y))]).unwrap();
        // Y|↑⟩ = i|↓⟩, Y|↓⟩ = −i|↑⟩
        let up = apply_pauli_sum(&h, &StateVector::basis(1, 0).unwrap()).unwrap();
        assert_eq!(up, vec![c(0.0, 0.0), c(0.0, 1.0)]);
        let down = apply_pauli_sum(&h, &StateVector::basis(1, 1).unwrap()).unwrap();
        assert_eq!(down, vec![c(0.0, -1.0), c(0.0, 0.0)]);
    }

    #[test]
    fn singlet_is_eigenstate() {
        let s = 0.5f64.sqrt();
        let singlet = StateVector::from_amplitudes(2, vec![c(0.0, 0.0), c(s, 0.0), c(-s, 0.0), c(0.0, 0.0)]).unwrap();
        let h = heisenberg_chain(2, 1.0).unwrap();
        let out = apply_pauli_sum(&h, &singlet).unwrap();
        for (o, a) in out.iter().zip(singlet.amplitudes()) {
            assert!((o + 3.0 * a).norm() < 1e-15);
        }
        assert!((expectation(&h, &singlet).unwrap() + 3.0).abs() < 1e-15);
    }

    #[test]
    fn identity_becomes_shift() {
        let h = PauliSum::from_terms(
            2,
            vec![
                (2.5, PauliString::identity()),
                (1.0, PauliString::single(1, Axis::Z)),
            ],
        )
        .unwrap();
        let op = CompiledOperator::new(&h).unwrap();
        assert_eq!(op.shift(), 2.5);
        assert!(op.is_diagonal());
        assert_eq!(op.norm_bound(), 1.0);
        let e = op.expectation(&StateVector::basis(2, 0b10).unwrap()).unwrap();
        assert_eq!(e, 1.5);
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let h = heisenberg_chain(3, 1.0).unwrap();
        assert!(matches!(
            apply_pauli_sum(&h, &StateVector::neel(2).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
