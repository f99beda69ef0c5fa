// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense matrices for reference spectra, small unitaries and their logarithms.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;

use super::state::{check_sites, StateVector};
use crate::error::{Error, Result};
use crate::model::pauli::{Axis, PauliString, PauliSum};

/// Largest register for dense matrices and eigensolves.
pub const MAX_DENSE_SITES: usize = 12;

/// Eigenvalues closer than this count as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

pub type CMatrix = DMatrix<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn string_weight(p: &PauliString) -> (usize, usize, Complex64) {
    let (x, z, ny) = p.masks();
    (x as usize, z as usize, p.phase().to_complex() * Complex64::i().powu(ny))
}

fn parity_sign(b: usize, z: usize) -> f64 {
    if (b & z).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// The `2ⁿ × 2ⁿ` matrix of a Pauli sum.
pub fn to_dense(h: &PauliSum) -> Result<CMatrix> {
    check_sites(h.nsites(), MAX_DENSE_SITES)?;
    let dim = 1usize << h.nsites();
    let mut m = CMatrix::zeros(dim, dim);
    for (c, p) in h.terms() {
        let (x, z, w) = string_weight(p);
        let w = w * *c;
        for b in 0..dim {
            m[(b ^ x, b)] += w * parity_sign(b, z);
        }
    }
    Ok(m)
}

/// True when every term has an even number of `Y` factors, so the matrix is real.
fn is_real(h: &PauliSum) -> bool {
    h.terms()
        .iter()
        .all(|(_, p)| p.sites().iter().filter(|(_, a)| *a == Axis::Y).count() % 2 == 0)
}

/// Full spectrum with eigenvectors as columns, energies ascending.
#[derive(Clone, Debug)]
pub struct Spectrum {
    nsites: usize,
    energies: Vec<f64>,
    vectors: CMatrix,
}

impl Spectrum {
    pub fn new(h: &PauliSum) -> Result<Self> {
        let m = to_dense(h)?;
        let (values, vectors) = if is_real(h) {
            let re = m.map(|c| c.re);
            let eig = SymmetricEigen::new(re);
            (eig.eigenvalues, eig.eigenvectors.map(|r| Complex64::new(r, 0.0)))
        } else {
            let eig = SymmetricEigen::new(m);
            (eig.eigenvalues, eig.eigenvectors)
        };
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let energies = order.iter().map(|&i| values[i]).collect();
        let vectors = CMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| vectors[(r, order[c])]);
        Ok(Self {
            nsites: h.nsites(),
            energies,
            vectors,
        })
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn state(&self, k: usize) -> StateVector {
        let col = self.vectors.column(k).iter().copied().collect();
        StateVector::normalized(self.nsites, col).expect("eigenvectors are normalized")
    }

    /// Number of states within [`DEGENERACY_TOL`] of the lowest energy.
    pub fn ground_degeneracy(&self) -> usize {
        let e0 = self.energies[0];
        self.energies.iter().take_while(|e| **e - e0 <= DEGENERACY_TOL).count()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Lowest energy above the ground multiplet.
    pub fn first_excited_energy(&self) -> Option<f64> {
        self.energies.get(self.ground_degeneracy()).copied()
    }

    /// Weight of `ψ` in the (possibly degenerate) ground space.
    pub fn ground_overlap(&self, psi: &StateVector) -> Result<f64> {
        if psi.nsites() != self.nsites {
            return Err(Error::DimensionMismatch {
                expected: self.nsites,
                actual: psi.nsites(),
            });
        }
        let v = DVector::from_column_slice(psi.amplitudes());
        Ok((0..self.ground_degeneracy())
            .map(|k| self.vectors.column(k).dotc(&v).norm_sqr())
            .sum::<f64>()
            .min(1.0))
    }
}

/// The `k` lowest eigenpairs, energies ascending and vectors orthonormal.
pub fn eigensolve_lowest(h: &PauliSum, k: usize) -> Result<Vec<(f64, StateVector)>> {
    let dim = 1usize << h.nsites().min(usize::BITS as usize - 1);
    if k == 0 || k > dim {
        return Err(Error::InvalidArgument(format!("k = {k} for dimension {dim}")));
    }
    let spec = Spectrum::new(h)?;
    Ok((0..k).map(|i| (spec.energies[i], spec.state(i))).collect())
}

/// `exp(−i m t)` for Hermitian `m`, through its eigendecomposition.
pub fn expm_hermitian(m: &CMatrix, t: f64) -> CMatrix {
    let eig = SymmetricEigen::new(m.clone());
    let phases = eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t));
    let v = &eig.eigenvectors;
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// Largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Hermitian `G` with `U = exp(−iG)` and spectrum in `(−π, π)`.
///
/// Fails if an eigenphase sits within `margin` of the branch cut at `±π`.
pub fn unitary_generator(u: &CMatrix, margin: f64) -> Result<CMatrix> {
    let (q, t) = Schur::new(u.clone()).unpack();
    let n = u.nrows();
    let mut phases = DVector::from_element(n, zero());
    for k in 0..n {
        let arg = t[(k, k)].arg();
        if PI - arg.abs() < margin {
            return Err(Error::LogBranch(arg));
        }
        // U = e^{−iG} ⇒ G's eigenvalue is −arg
        phases[k] = Complex64::new(-arg, 0.0);
    }
    let g = &q * CMatrix::from_diagonal(&phases) * q.adjoint();
    Ok((&g + g.adjoint()) * Complex64::new(0.5, 0.0))
}

/// Every Pauli string on `nsites` sites, in canonical order.
pub fn all_pauli_strings(nsites: usize) -> Vec<PauliString> {
    let mut out = Vec::with_capacity(1 << (2 * nsites));
    for code in 0..(1usize << (2 * nsites)) {
        let sites: Vec<(usize, Axis)> = (0..nsites)
            .filter_map(|s| match (code >> (2 * s)) & 3 {
                1 => Some((s, Axis::X)),
                2 => Some((s, Axis::Y)),
                3 => Some((s, Axis::Z)),
                _ => None,
            })
            .collect();
        out.push(PauliString::new(sites).expect("sites increase"));
    }
    out
}

/// Expands a Hermitian matrix in Pauli strings, `c_P = Tr(P M)/2ⁿ`, dropping
/// coefficients with magnitude below `cutoff`.
pub fn pauli_decompose(m: &CMatrix, nsites: usize, cutoff: f64) -> Result<PauliSum> {
    check_sites(nsites, 6)?;
    let dim = 1usize << nsites;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: m.nrows(),
        });
    }
    let mut terms = Vec::new();
    for p in all_pauli_strings(nsites) {
        let (x, z, w) = string_weight(&p);
        // Tr(M P) = Σ_c w(c) M[c, c ⊕ x]
        let tr: Complex64 = (0..dim).map(|c| w * parity_sign(c, z) * m[(c, c ^ x)]).sum();
        let coeff = tr / dim as f64;
        if coeff.im.abs() > 1e-9 * (1.0 + coeff.re.abs()) {
            return Err(Error::NonHermitian(format!("{p} carries imaginary weight {}", coeff.im)));
        }
        if coeff.re.abs() >= cutoff {
            terms.push((coeff.re, p));
        }
    }
    PauliSum::from_terms(nsites, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::operator::apply_pauli_sum;
    use crate::model::hamiltonians::heisenberg_chain;
    use proptest::prelude::*;

    #[test]
    fn two_site_ground_state_is_singlet() {
        let h = heisenberg_chain(2, 1.0).unwrap();
        let pairs = eigensolve_lowest(&h, 1).unwrap();
        assert!((pairs[0].0 + 3.0).abs() < 1e-12);
        let v = pairs[0].1.amplitudes();
        let s = 0.5f64.sqrt();
        assert!((v[1].norm() - s).abs() < 1e-12);
        assert!((v[1] + v[2]).norm() < 1e-12);
    }

    #[test]
    fn shift_moves_energies_only() {
        let h = heisenberg_chain(4, 1.0).unwrap();
        let shifted = &h + &PauliSum::from_terms(4, vec![(2.5, PauliString::identity())]).unwrap();
        let a = eigensolve_lowest(&h, 3).unwrap();
        let b = eigensolve_lowest(&shifted, 3).unwrap();
        assert!((a[0].0 + 2.5 - b[0].0).abs() < 1e-11);
        // nondegenerate ground state: same vector up to phase
        assert!((a[0].1.overlap(&b[0].1).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvectors_are_orthonormal() {
        let h = heisenberg_chain(5, 1.0).unwrap();
        let pairs = eigensolve_lowest(&h, 4).unwrap();
        for (i, (_, a)) in pairs.iter().enumerate() {
            for (j, (_, b)) in pairs.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.inner(b).unwrap().norm() - want).abs() < 1e-10);
            }
        }
        assert!(pairs.windows(2).all(|w| w[0].0 <= w[1].0));
    }

    #[test]
    fn dense_matrix_matches_matrix_free_action() {
        let h = heisenberg_chain(3, 0.7).unwrap();
        let m = to_dense(&h).unwrap();
        let psi = StateVector::neel(3).unwrap();
        let free = apply_pauli_sum(&h, &psi).unwrap();
        let dense = &m * DVector::from_column_slice(psi.amplitudes());
        for (a, b) in free.iter().zip(dense.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn generator_inverts_exponential() {
        let h = heisenberg_chain(2, 0.3).unwrap();
        let h = &h + &PauliSum::from_terms(2, vec![(0.2, PauliString::pair(0, Axis::X, 1, Axis::Z))]).unwrap();
        let m = to_dense(&h).unwrap();
        let u = expm_hermitian(&m, 1.0);
        let g = unitary_generator(&u, 1e-6).unwrap();
        assert!((g - m).norm() < 1e-12);
        let back = pauli_decompose(&to_dense(&h).unwrap(), 2, 1e-14).unwrap();
        assert!(back.approx_eq(&h, 1e-14));
    }

    #[test]
    fn branch_cut_is_reported() {
        let h = PauliSum::from_terms(1, vec![(1.0, PauliString::single(0, Axis::Z))]).unwrap();
        let u = expm_hermitian(&to_dense(&h).unwrap(), PI);
        assert!(matches!(unitary_generator(&u, 1e-6), Err(Error::LogBranch(_))));
    }

    #[test]
    fn operator_norm_of_pauli_is_one() {
        let h = PauliSum::from_terms(2, vec![(1.0, PauliString::pair(0, Axis::Y, 1, Axis::X))]).unwrap();
        assert!((operator_norm(&to_dense(&h).unwrap()) - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn decomposition_round_trips(coeffs in proptest::collection::vec(-2.0f64..2.0, 16)) {
            let strings = all_pauli_strings(2);
            let h = PauliSum::from_terms(2, coeffs.into_iter().zip(strings)).unwrap();
            let back = pauli_decompose(&to_dense(&h).unwrap(), 2, 0.0).unwrap();
            prop_assert!(back.approx_eq(&h, 1e-13));
        }
    }
}
