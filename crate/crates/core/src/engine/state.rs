// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::lattice::{chain_stagger, Couplings};

/// Largest register handled by the state-vector engine.
pub const MAX_STATE_SITES: usize = 14;

const NORM_TOL: f64 = 1e-10;

pub(crate) fn check_sites(nsites: usize, limit: usize) -> Result<()> {
    if nsites == 0 {
        return Err(Error::InvalidArgument("a state needs at least one site".into()));
    }
    if nsites > limit {
        return Err(Error::TooManySites { nsites, limit });
    }
    Ok(())
}

/// Normalized amplitudes over the `2ⁿ` computational basis states.
///
/// Bit `j` of a basis index is site `j`; a clear bit is `|↑⟩` (`Z = +1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    nsites: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(nsites: usize, index: usize) -> Result<Self> {
        check_sites(nsites, MAX_STATE_SITES)?;
        let dim = 1usize << nsites;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside a {dim}-dimensional space"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { nsites, amplitudes })
    }

    /// `|↑↓↑↓…⟩`.
    pub fn neel(nsites: usize) -> Result<Self> {
        check_sites(nsites, MAX_STATE_SITES)?;
        let index = chain_stagger(nsites)
            .iter()
            .enumerate()
            .filter(|(_, s)| **s > 0.0)
            .fold(0, |acc, (j, _)| acc | (1 << j));
        Self::basis(nsites, index)
    }

    /// The Néel state of a lattice: up where the staggering sign is `−1`.
    pub fn neel_for(couplings: &Couplings) -> Result<Self> {
        Self::basis(couplings.nsites(), couplings.neel_index())
    }

    /// `|↓⟩^⊗n`.
    pub fn all_down(nsites: usize) -> Result<Self> {
        check_sites(nsites, MAX_STATE_SITES)?;
        Self::basis(nsites, (1 << nsites) - 1)
    }

    /// `|↑⟩^⊗n`.
    pub fn all_up(nsites: usize) -> Result<Self> {
        Self::basis(nsites, 0)
    }

    /// Wraps amplitudes that must already be normalized.
    pub fn from_amplitudes(nsites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_sites(nsites, MAX_STATE_SITES)?;
        if amplitudes.len() != 1 << nsites {
            return Err(Error::DimensionMismatch {
                expected: 1 << nsites,
                actual: amplitudes.len(),
            });
        }
        let n2 = norm_sqr(&amplitudes);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { nsites, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(nsites: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm_sqr(&amplitudes).sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NotNormalized(n * n));
        }
        amplitudes.iter_mut().for_each(|a| *a /= n);
        Self::from_amplitudes(nsites, amplitudes)
    }

    /// For engine internals that preserve the norm by construction.
    pub(crate) fn from_unitary_image(nsites: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << nsites);
        Self { nsites, amplitudes }
    }

    pub fn nsites(&self) -> usize {
        self.nsites
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Euclidean distance `‖self − other‖`, sensitive to global phase.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.check_same(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Applies `Π_{j ∈ sites} X_j`.
    pub fn apply_x(&self, sites: &[usize]) -> Result<StateVector> {
        let mut mask = 0usize;
        for &s in sites {
            if s >= self.nsites {
                return Err(Error::SiteOutOfRange {
                    site: s,
                    nsites: self.nsites,
                });
            }
            mask ^= 1 << s;
        }
        let amplitudes = (0..self.dim()).map(|b| self.amplitudes[b ^ mask]).collect();
        Ok(Self::from_unitary_image(self.nsites, amplitudes))
    }

    /// `⟨Z_j⟩`.
    pub fn z_expectation(&self, site: usize) -> Result<f64> {
        if site >= self.nsites {
            return Err(Error::SiteOutOfRange {
                site,
                nsites: self.nsites,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(b, a)| if b >> site & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
            .sum())
    }

    pub(crate) fn check_same(&self, other: &StateVector) -> Result<()> {
        if self.nsites != other.nsites {
            return Err(Error::DimensionMismatch {
                expected: self.nsites,
                actual: other.nsites,
            });
        }
        Ok(())
    }
}

pub(crate) fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum()
}
