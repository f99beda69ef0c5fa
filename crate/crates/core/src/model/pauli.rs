// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Pauli strings and real-weighted sums of them.
//!
//! Every Hamiltonian in the crate is a [`PauliSum`]: a list of real
//! coefficients attached to canonical (phase `+1`) [`PauliString`]s, with
//! duplicate strings merged at construction.  Site `j` of a string acts on
//! bit `j` of a computational-basis index (see [`crate::engine`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Single-site Pauli axis. The identity is represented by absence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Product of two single-site Paulis: `a · b = phase · c`.
    ///
    /// Returns `None` for the axis when `a == b` (the product is the identity).
    fn product(a: Axis, b: Axis) -> (Phase, Option<Axis>) {
        use Axis::*;
        match (a, b) {
            (X, X) | (Y, Y) | (Z, Z) => (Phase::One, None),
            (X, Y) => (Phase::I, Some(Z)),
            (Y, Z) => (Phase::I, Some(X)),
            (Z, X) => (Phase::I, Some(Y)),
            (Y, X) => (Phase::MinusI, Some(Z)),
            (Z, Y) => (Phase::MinusI, Some(X)),
            (X, Z) => (Phase::MinusI, Some(Y)),
        }
    }

    fn letter(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }
}

/// A power of `i`: the only phases a product of canonical strings can carry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    #[default]
    One,
    I,
    MinusOne,
    MinusI,
}

impl Phase {
    fn exponent(self) -> u8 {
        match self {
            Phase::One => 0,
            Phase::I => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    fn from_exponent(k: u8) -> Self {
        match k % 4 {
            0 => Phase::One,
            1 => Phase::I,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::One => Complex64::new(1.0, 0.0),
            Phase::I => Complex64::new(0.0, 1.0),
            Phase::MinusOne => Complex64::new(-1.0, 0.0),
            Phase::MinusI => Complex64::new(0.0, -1.0),
        }
    }

    /// `Some(±1)` for real phases.
    pub fn real_sign(self) -> Option<f64> {
        match self {
            Phase::One => Some(1.0),
            Phase::MinusOne => Some(-1.0),
            _ => None,
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    // phases i^a · i^b = i^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }
}

/// Tensor product of single-site Paulis with a phase.
///
/// Sites are kept strictly increasing; the identity is the empty list.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    sites: Vec<(usize, Axis)>,
    phase: Phase,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a canonical string. Sites must be strictly increasing.
    pub fn new(sites: impl IntoIterator<Item = (usize, Axis)>) -> Result<Self> {
        let sites: Vec<_> = sites.into_iter().collect();
        if let Some(w) = sites.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(format!(
                "Pauli string sites must be strictly increasing, got {} then {}",
                w[0].0, w[1].0
            )));
        }
        Ok(Self {
            sites,
            phase: Phase::One,
        })
    }

    pub fn single(site: usize, axis: Axis) -> Self {
        Self {
            sites: vec![(site, axis)],
            phase: Phase::One,
        }
    }

    /// Two-site string `a_i b_j`; panics if `i == j`.
    pub fn pair(i: usize, a: Axis, j: usize, b: Axis) -> Self {
        assert_ne!(i, j, "pair() needs two distinct sites");
        let sites = if i < j {
            vec![(i, a), (j, b)]
        } else {
            vec![(j, b), (i, a)]
        };
        Self {
            sites,
            phase: Phase::One,
        }
    }

    pub fn sites(&self) -> &[(usize, Axis)] {
        &self.sites
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn weight(&self) -> usize {
        self.sites.len()
    }

    pub fn is_identity(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn axis_at(&self, site: usize) -> Option<Axis> {
        self.sites
            .binary_search_by_key(&site, |&(s, _)| s)
            .ok()
            .map(|k| self.sites[k].1)
    }

    pub fn max_site(&self) -> Option<usize> {
        self.sites.last().map(|&(s, _)| s)
    }

    /// Same operator content with phase reset to `+1`.
    pub fn canonical(&self) -> Self {
        Self {
            sites: self.sites.clone(),
            phase: Phase::One,
        }
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Canonical product `self · other` with the accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> PauliString {
        let mut phase = self.phase * other.phase;
        let mut sites = Vec::with_capacity(self.sites.len() + other.sites.len());
        let (mut a, mut b) = (self.sites.iter().peekable(), other.sites.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(sa, xa)), Some(&&(sb, xb))) => {
                    if sa < sb {
                        sites.push((sa, xa));
                        a.next();
                    } else if sb < sa {
                        sites.push((sb, xb));
                        b.next();
                    } else {
                        let (p, axis) = Axis::product(xa, xb);
                        phase = phase * p;
                        if let Some(axis) = axis {
                            sites.push((sa, axis));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&s), None) => {
                    sites.push(s);
                    a.next();
                }
                (None, Some(&&s)) => {
                    sites.push(s);
                    b.next();
                }
                (None, None) => break,
            }
        }
        PauliString { sites, phase }
    }

    /// Bit masks `(x, z)` and the number of `Y` factors.
    ///
    /// With `Y = i X Z` site-wise, the string equals
    /// `phase · i^ny · X^x Z^z`, so `P|b⟩ = phase · i^ny · (−1)^{|b ∧ z|} |b ⊕ x⟩`.
    pub fn masks(&self) -> (u64, u64, u32) {
        let (mut x, mut z, mut ny) = (0u64, 0u64, 0u32);
        for &(s, axis) in &self.sites {
            debug_assert!(s < 64);
            let bit = 1u64 << s;
            match axis {
                Axis::X => x |= bit,
                Axis::Z => z |= bit,
                Axis::Y => {
                    x |= bit;
                    z |= bit;
                    ny += 1;
                }
            }
        }
        (x, z, ny)
    }

    /// Whether two strings commute (even number of anticommuting sites).
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti = self
            .sites
            .iter()
            .filter(|&&(s, a)| matches!(other.axis_at(s), Some(b) if b != a))
            .count();
        anti % 2 == 0
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            Phase::One => {}
            Phase::I => f.write_str("i·")?,
            Phase::MinusOne => f.write_str("-")?,
            Phase::MinusI => f.write_str("-i·")?,
        }
        if self.sites.is_empty() {
            return f.write_str("I");
        }
        for (k, &(s, a)) in self.sites.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", a.letter(), s)?;
        }
        Ok(())
    }
}

/// Real-weighted sum of canonical Pauli strings on `nsites` sites.
///
/// Terms are sorted by string, never repeated, and never carry an exactly
/// zero coefficient. Real coefficients on phase-free strings make every sum
/// Hermitian.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    nsites: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    pub fn zero(nsites: usize) -> Self {
        Self {
            nsites,
            terms: Vec::new(),
        }
    }

    /// Merges `terms` into a sum. Phases `±1` are folded into the
    /// coefficients; an imaginary phase is rejected as non-Hermitian.
    pub fn from_terms(
        nsites: usize,
        terms: impl IntoIterator<Item = (f64, PauliString)>,
    ) -> Result<Self> {
        let mut acc = TermAccumulator::new(nsites);
        for (c, p) in terms {
            if let Some(site) = p.max_site().filter(|&s| s >= nsites) {
                return Err(Error::SiteOutOfRange { site, nsites });
            }
            if !c.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient {c} on {p}")));
            }
            let sign = p
                .phase()
                .real_sign()
                .ok_or_else(|| Error::NonHermitian(format!("{c} · {p}")))?;
            acc.add(sign * c, p.canonical());
        }
        Ok(acc.finish())
    }

    pub fn nsites(&self) -> usize {
        self.nsites
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a canonical string, zero when absent.
    pub fn coefficient(&self, p: &PauliString) -> f64 {
        let key = p.canonical();
        self.terms
            .binary_search_by(|(_, q)| q.cmp(&key))
            .map(|k| self.terms[k].0)
            .unwrap_or(0.0)
    }

    /// `Σ|c|`, an upper bound on the operator norm.
    pub fn one_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, p)| p.sites().iter().all(|&(_, a)| a == Axis::Z))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut acc = TermAccumulator::new(self.nsites);
        for (c, p) in &self.terms {
            acc.add(factor * c, p.clone());
        }
        acc.finish()
    }

    /// `a·self + b·other`.
    pub fn linear_combination(a: f64, lhs: &PauliSum, b: f64, rhs: &PauliSum) -> Self {
        let mut acc = TermAccumulator::new(lhs.nsites.max(rhs.nsites));
        for (c, p) in &lhs.terms {
            acc.add(a * c, p.clone());
        }
        for (c, p) in &rhs.terms {
            acc.add(b * c, p.clone());
        }
        acc.finish()
    }

    /// Conjugation `X_F · H · X_F` by Pauli X on every site in `flips`:
    /// each `Y` or `Z` on a flipped site contributes a sign.
    pub fn conjugate_by_x(&self, flips: &[usize]) -> Self {
        let mut acc = TermAccumulator::new(self.nsites);
        for (c, p) in &self.terms {
            let negs = p
                .sites()
                .iter()
                .filter(|&&(s, a)| a != Axis::X && flips.contains(&s))
                .count();
            let sign = if negs % 2 == 0 { 1.0 } else { -1.0 };
            acc.add(sign * c, p.clone());
        }
        acc.finish()
    }

    /// Term-by-term comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        self.nsites == other.nsites && (self - other).terms.iter().all(|(c, _)| c.abs() <= tol)
    }

    pub(crate) fn from_sorted_unchecked(nsites: usize, terms: Vec<(f64, PauliString)>) -> Self {
        Self { nsites, terms }
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, p)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(if *c < 0.0 { " - " } else { " + " })?;
                write!(f, "{}·{}", c.abs(), p)?;
            } else {
                write!(f, "{}·{}", c, p)?;
            }
        }
        Ok(())
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;

    fn add(self, rhs: &PauliSum) -> PauliSum {
        PauliSum::linear_combination(1.0, self, 1.0, rhs)
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;

    fn sub(self, rhs: &PauliSum) -> PauliSum {
        PauliSum::linear_combination(1.0, self, -1.0, rhs)
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;

    fn neg(self) -> PauliSum {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for &PauliSum {
    type Output = PauliSum;

    fn mul(self, rhs: f64) -> PauliSum {
        self.scaled(rhs)
    }
}

/// Collects terms keyed by canonical string, merging as it goes.
///
/// Builders inside the crate use this directly since they only ever push
/// canonical strings on valid sites.
#[derive(Debug)]
pub(crate) struct TermAccumulator {
    nsites: usize,
    map: BTreeMap<PauliString, f64>,
}

impl TermAccumulator {
    pub(crate) fn new(nsites: usize) -> Self {
        Self {
            nsites,
            map: BTreeMap::new(),
        }
    }

    pub(crate) fn add(&mut self, coeff: f64, p: PauliString) {
        debug_assert_eq!(p.phase(), Phase::One);
        debug_assert!(p.max_site().is_none_or(|s| s < self.nsites));
        *self.map.entry(p).or_insert(0.0) += coeff;
    }

    pub(crate) fn finish(self) -> PauliSum {
        let terms = self
            .map
            .into_iter()
            .filter(|(_, c)| *c != 0.0)
            .map(|(p, c)| (c, p))
            .collect();
        PauliSum::from_sorted_unchecked(self.nsites, terms)
    }
}
