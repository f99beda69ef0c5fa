// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Lattices, coupling graphs and staggering signs.
//!
//! Comb sites `(x, y)` with `x ∈ 0..L` and `y ∈ {1, 2}` are stored at linear
//! index `2x + (y − 1)`: backbone sites are even, teeth are odd. The
//! staggering sign of a comb site is `(−1)^{x+y}` from its coordinates; a
//! chain site `j` has sign `(−1)^{j+1}`. Both put sign `−1` on site 0, so the
//! Néel state favored by a positive penalty always starts `|↑…⟩`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weighted Ising/Heisenberg bond between sites `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bond {
    pub i: usize,
    pub j: usize,
    pub strength: f64,
}

/// Symmetric sparse coupling matrix plus the per-site staggering pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCouplings")]
pub struct Couplings {
    nsites: usize,
    bonds: Vec<Bond>,
    stagger: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCouplings {
    nsites: usize,
    bonds: Vec<Bond>,
    stagger: Vec<f64>,
}

impl TryFrom<RawCouplings> for Couplings {
    type Error = Error;

    fn try_from(raw: RawCouplings) -> Result<Self> {
        Couplings::new(raw.nsites, raw.bonds.into_iter().map(|b| (b.i, b.j, b.strength)), raw.stagger)
    }
}

impl Couplings {
    /// Builds couplings from `(i, j, J_ij)` entries of the upper (or lower)
    /// triangle. Each unordered pair may appear once; zero entries are dropped.
    pub fn new(
        nsites: usize,
        entries: impl IntoIterator<Item = (usize, usize, f64)>,
        stagger: Vec<f64>,
    ) -> Result<Self> {
        if nsites == 0 {
            return Err(Error::InvalidLattice("no sites".into()));
        }
        if stagger.len() != nsites {
            return Err(Error::InvalidLattice(format!(
                "{} staggering signs for {nsites} sites",
                stagger.len()
            )));
        }
        if let Some(s) = stagger.iter().find(|s| s.abs() != 1.0) {
            return Err(Error::InvalidLattice(format!("staggering sign {s} is not ±1")));
        }
        let mut bonds: Vec<Bond> = Vec::new();
        for (a, b, v) in entries {
            let (i, j) = (a.min(b), a.max(b));
            if i == j {
                return Err(Error::InvalidLattice(format!("self-coupling on site {i}")));
            }
            if j >= nsites {
                return Err(Error::SiteOutOfRange { site: j, nsites });
            }
            if !v.is_finite() {
                return Err(Error::InvalidLattice(format!("coupling ({i},{j}) = {v}")));
            }
            if bonds.iter().any(|bd| bd.i == i && bd.j == j) {
                return Err(Error::InvalidLattice(format!("pair ({i},{j}) given twice")));
            }
            if v != 0.0 {
                bonds.push(Bond { i, j, strength: v });
            }
        }
        bonds.sort_by_key(|b| (b.i, b.j));
        Ok(Self {
            nsites,
            bonds,
            stagger,
        })
    }

    /// Reads the upper triangle of a symmetric matrix.
    pub fn from_symmetric_matrix(matrix: &[Vec<f64>], stagger: Vec<f64>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidLattice("coupling matrix is not square".into()));
        }
        let mut entries = Vec::new();
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (matrix[i][j], matrix[j][i]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::InvalidLattice(format!(
                        "coupling matrix not symmetric at ({i},{j}): {a} vs {b}"
                    )));
                }
                entries.push((i, j, a));
            }
        }
        Self::new(n, entries, stagger)
    }

    pub fn nsites(&self) -> usize {
        self.nsites
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn stagger(&self) -> &[f64] {
        &self.stagger
    }

    /// `J_ij` for any ordered pair, zero when uncoupled.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = (i.min(j), i.max(j));
        self.bonds
            .iter()
            .find(|b| b.i == i && b.j == j)
            .map_or(0.0, |b| b.strength)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for b in &mut out.bonds {
            b.strength *= factor;
        }
        out
    }

    /// Sites with staggering sign `−1`, i.e. the up spins of the Néel state.
    pub fn neel_up_sites(&self) -> Vec<usize> {
        (0..self.nsites).filter(|&s| self.stagger[s] < 0.0).collect()
    }

    /// Basis index of the Néel state: down spins (bit 1) where the sign is `+1`.
    pub fn neel_index(&self) -> usize {
        (0..self.nsites)
            .filter(|&s| self.stagger[s] > 0.0)
            .fold(0usize, |acc, s| acc | (1 << s))
    }
}

/// Default staggering for a linear arrangement: `(−1)^{j+1}`.
pub fn chain_stagger(nsites: usize) -> Vec<f64> {
    (0..nsites)
        .map(|j| if j % 2 == 0 { -1.0 } else { 1.0 })
        .collect()
}

/// Open-boundary lattices used throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LatticeSpec {
    /// `L` sites with nearest-neighbor coupling `j`.
    Chain { length: usize, j: f64 },
    /// Backbone of `L` sites with coupling `j`, one tooth per backbone site
    /// with coupling `jp`; `2L` sites.
    Comb { length: usize, j: f64, jp: f64 },
    /// Arbitrary couplings (for instance a Rydberg 1/r⁶ matrix).
    Custom(Couplings),
}

impl LatticeSpec {
    pub fn chain(length: usize, j: f64) -> Result<Self> {
        let spec = LatticeSpec::Chain { length, j };
        spec.validate()?;
        Ok(spec)
    }

    pub fn comb(length: usize, j: f64, jp: f64) -> Result<Self> {
        let spec = LatticeSpec::Comb { length, j, jp };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let (length, strengths) = match self {
            LatticeSpec::Chain { length, j } => (*length, vec![*j]),
            LatticeSpec::Comb { length, j, jp } => (*length, vec![*j, *jp]),
            LatticeSpec::Custom(c) => (c.nsites(), vec![]),
        };
        if length < 2 {
            return Err(Error::InvalidLattice(format!("length {length} < 2")));
        }
        if let Some(v) = strengths.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidLattice(format!("coupling {v}")));
        }
        Ok(())
    }

    pub fn nsites(&self) -> usize {
        match self {
            LatticeSpec::Chain { length, .. } => *length,
            LatticeSpec::Comb { length, .. } => 2 * length,
            LatticeSpec::Custom(c) => c.nsites(),
        }
    }

    /// Lattice coordinates `(x, y)` of a comb site.
    pub fn comb_coordinates(site: usize) -> (usize, usize) {
        (site / 2, site % 2 + 1)
    }

    pub fn comb_index(x: usize, y: usize) -> usize {
        debug_assert!(y == 1 || y == 2);
        2 * x + (y - 1)
    }

    pub fn stagger_sign(&self, site: usize) -> f64 {
        match self {
            LatticeSpec::Chain { .. } => chain_stagger(site + 1)[site],
            LatticeSpec::Comb { .. } => {
                let (x, y) = Self::comb_coordinates(site);
                if (x + y) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            LatticeSpec::Custom(c) => c.stagger()[site],
        }
    }

    /// The bond graph with its Heisenberg couplings.
    pub fn couplings(&self) -> Couplings {
        let n = self.nsites();
        let stagger: Vec<f64> = (0..n).map(|s| self.stagger_sign(s)).collect();
        let entries: Vec<(usize, usize, f64)> = match self {
            LatticeSpec::Chain { length, j } => (0..length - 1).map(|s| (s, s + 1, *j)).collect(),
            LatticeSpec::Comb { length, j, jp } => {
                let mut e = Vec::with_capacity(2 * length - 1);
                for x in 0..*length {
                    if x + 1 < *length {
                        e.push((Self::comb_index(x, 1), Self::comb_index(x + 1, 1), *j));
                    }
                    e.push((Self::comb_index(x, 1), Self::comb_index(x, 2), *jp));
                }
                e
            }
            LatticeSpec::Custom(c) => return c.clone(),
        };
        Couplings::new(n, entries, stagger).expect("built-in lattices are well formed")
    }

    /// Prefactor on the Ising term of the spiral Hamiltonian: the comb form
    /// carries `1/4`, the chain and custom forms none.
    pub fn spiral_zz_prefactor(&self) -> f64 {
        match self {
            LatticeSpec::Comb { .. } => 0.25,
            _ => 1.0,
        }
    }
}

/// Van der Waals couplings `J_ij = V0 / |x_i − x_j|⁶` for atoms in the plane.
pub fn rydberg_couplings(positions: &[[f64; 2]], v0: f64, stagger: Vec<f64>) -> Result<Couplings> {
    let n = positions.len();
    let mut entries = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = positions[i][0] - positions[j][0];
            let dy = positions[i][1] - positions[j][1];
            let r2 = dx * dx + dy * dy;
            if r2 == 0.0 {
                return Err(Error::CoincidentAtoms(i, j));
            }
            entries.push((i, j, v0 / (r2 * r2 * r2)));
        }
    }
    Couplings::new(n, entries, stagger)
}

/// Atom positions realizing a comb of backbone length `length` at spacing
/// `a`: backbone atoms on the x axis, teeth displaced alternately above and
/// below so neighboring teeth sit `√5·a` apart.
pub fn comb_rydberg_layout(length: usize, a: f64) -> Vec<[f64; 2]> {
    let mut pos = vec![[0.0; 2]; 2 * length];
    for x in 0..length {
        let xf = x as f64 * a;
        pos[LatticeSpec::comb_index(x, 1)] = [xf, 0.0];
        let side = if x % 2 == 0 { 1.0 } else { -1.0 };
        pos[LatticeSpec::comb_index(x, 2)] = [xf, side * a];
    }
    pos
}
