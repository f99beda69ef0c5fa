// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use adiaspiral::{Axis, PauliString, PauliSum, StateVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli_2x2(axis: Option<Axis>) -> Dense {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match axis {
        None => vec![vec![l, o], vec![o, l]],
        Some(Axis::X) => vec![vec![o, l], vec![l, o]],
        Some(Axis::Y) => vec![vec![o, -i], vec![i, o]],
        Some(Axis::Z) => vec![vec![l, o], vec![o, -l]],
    }
}

fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `σ_{n−1} ⊗ … ⊗ σ_0`: site 0 is the least significant bit, a clear bit is `|↑⟩`.
pub fn dense_string(p: &PauliString, nsites: usize) -> Dense {
    let mut m = vec![vec![c(1.0, 0.0)]];
    for site in (0..nsites).rev() {
        m = kron(&m, &pauli_2x2(p.axis_at(site)));
    }
    let phase = p.phase().to_complex();
    m.iter().map(|row| row.iter().map(|v| v * phase).collect()).collect()
}

pub fn dense_sum(h: &PauliSum) -> Dense {
    let dim = 1 << h.nsites();
    let mut out = vec![vec![c(0.0, 0.0); dim]; dim];
    for (coef, p) in h.terms() {
        let m = dense_string(p, h.nsites());
        for (r, row) in m.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                out[r][k] += v * coef;
            }
        }
    }
    out
}

pub fn matvec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn random_state(nsites: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = (0..1usize << nsites)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(nsites, amps).unwrap()
}

/// Random Hermitian Pauli sum with `terms` strings of weight ≤ `nsites`.
pub fn random_pauli_sum(nsites: usize, terms: usize, seed: u64) -> PauliSum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axes = [Axis::X, Axis::Y, Axis::Z];
    let entries = (0..terms)
        .map(|_| {
            let sites = (0..nsites)
                .filter_map(|j| {
                    let k = rng.random_range(0..4);
                    (k < 3).then(|| (j, axes[k]))
                })
                .collect::<Vec<_>>();
            (rng.random_range(-2.0..2.0), PauliString::new(sites).unwrap())
        })
        .collect::<Vec<_>>();
    PauliSum::from_terms(nsites, entries).unwrap()
}
