// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use adiaspiral::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_matches_the_dense_oracle(n in 1usize..=4, terms in 1usize..10, seed in any::<u64>()) {
        let h = common::random_pauli_sum(n, terms, seed);
        let psi = common::random_state(n, seed ^ 0x5eed);
        let got = apply_pauli_sum(&h, &psi).unwrap();
        let want = common::matvec(&common::dense_sum(&h), psi.amplitudes());
        for (a, b) in got.iter().zip(&want) {
            prop_assert!((a - b).norm() <= 1e-12, "{a} vs {b}");
        }
        let e_want: f64 = psi.amplitudes().iter().zip(&want).map(|(a, b)| (a.conj() * b).re).sum();
        prop_assert!((expectation(&h, &psi).unwrap() - e_want).abs() <= 1e-12);
    }

    #[test]
    fn constant_evolution_preserves_norm_and_energy(n in 1usize..=4, seed in any::<u64>(), t in 0.0f64..25.0) {
        let h = common::random_pauli_sum(n, 6, seed);
        let psi = common::random_state(n, seed.wrapping_add(1));
        let out = evolve_const(&h, t, &psi).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() <= 1e-10);
        let drift = (expectation(&h, &out).unwrap() - expectation(&h, &psi).unwrap()).abs();
        prop_assert!(drift <= 1e-8, "drift {drift}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn driven_evolution_reverses(length in 2usize..=4, j in 0.2f64..1.5, hp in 0.0f64..0.5, seed in any::<u64>()) {
        let spec = LatticeSpec::chain(length, j).unwrap();
        let sched = Schedule::linear(3.0, 8.0, hp).unwrap();
        let c = spec.couplings();
        let zz = spec.spiral_zz_prefactor();
        let h_of_t = |t: f64| spiral_from_couplings(&c, zz, &sched, t);
        let opts = EvolutionOptions { samples: 7, ..Default::default() };
        let psi0 = common::random_state(length, seed);
        let fwd = evolve_timedep(h_of_t, 0.0, 3.0, &psi0, None, &opts).unwrap();
        prop_assert!((fwd.final_state.norm_sqr() - 1.0).abs() <= 1e-10);
        let back = evolve_timedep_reverse(h_of_t, 0.0, 3.0, &fwd.final_state, None, &opts).unwrap();
        prop_assert!(back.final_state.distance(&psi0).unwrap() <= 10.0 * opts.tol);
    }
}

#[test]
fn integrators_agree() {
    let spec = LatticeSpec::comb(2, 1.0, 1.0).unwrap();
    let sched = Schedule::linear(4.0, 8.0, 0.2).unwrap();
    let probe = target_heisenberg(&spec).unwrap();
    let psi0 = StateVector::neel_for(&spec.couplings()).unwrap();
    let run = |integrator| {
        let opts = EvolutionOptions { integrator, samples: 5, ..Default::default() };
        evolve_timedep(|t| spiral_hamiltonian(&spec, &sched, t), 0.0, 4.0, &psi0, Some(&probe), &opts).unwrap()
    };
    let (a, b) = (run(Integrator::Midpoint), run(Integrator::Magnus4));
    assert!(a.final_state.distance(&b.final_state).unwrap() < 1e-7);
    assert!(a.steps > b.steps);
}

#[test]
fn step_cap_signals_non_convergence() {
    let spec = LatticeSpec::chain(3, 1.0).unwrap();
    let sched = Schedule::linear(10.0, 32.0, 0.0).unwrap();
    let psi0 = StateVector::neel(3).unwrap();
    let opts = EvolutionOptions { samples: 3, max_steps: 16, ..Default::default() };
    let err = evolve_timedep(|t| spiral_hamiltonian(&spec, &sched, t), 0.0, 10.0, &psi0, None, &opts).unwrap_err();
    assert!(err.is_numerical(), "{err}");
}
