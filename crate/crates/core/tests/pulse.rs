// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use adiaspiral::pulse::words;
use adiaspiral::*;
use proptest::prelude::*;

fn dimer() -> Couplings {
    LatticeSpec::chain(2, 1.0).unwrap().couplings()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn words_are_unitary(eps in 1e-3f64..0.3, j in -2.0f64..2.0, which in 0usize..5) {
        let c = LatticeSpec::chain(3, j).unwrap().couplings();
        let build = [words::ry_plus, words::y_pi, words::xxz, words::xxx, words::second_order_core][which];
        let u = build(&c, eps).unwrap().unitary().unwrap();
        let defect = (u.adjoint() * &u - nalgebra::DMatrix::identity(8, 8)).norm();
        prop_assert!(defect < 1e-10, "{defect}");
    }

    #[test]
    fn second_order_grid_identities(m in 1usize..200, omega in 0.5f64..200.0, hp in 0.0f64..2.0) {
        let plan = TrotterPlan::minimal_second_order(m, omega, hp).unwrap();
        let s = second_order_schedule(&plan, omega).unwrap();
        let t = plan.total_time;
        let sum: f64 = s.steps.iter().map(|x| x.delta).sum();
        prop_assert!((sum - t).abs() <= 1e-12 * t);
        prop_assert!((s.device_time - 2.0 * t).abs() <= 1e-12 * t);
        prop_assert!((s.pulse - PI / (2.0 * omega)).abs() <= 1e-15 * t);
        prop_assert_eq!(max_feasible_steps(t, omega), m);
        let over = TrotterPlan::new(TrotterOrder::SecondMinimal, m + 1, t, hp).unwrap();
        prop_assert!(second_order_schedule(&over, omega).is_err());
    }

    #[test]
    fn first_order_device_time(m in 1usize..40, t in 0.1f64..30.0, omega in 1.0f64..50.0) {
        let plan = TrotterPlan::new(TrotterOrder::First, m, t, 0.3).unwrap();
        let (seq, ends) = plan.sequence(&dimer(), omega).unwrap();
        prop_assert_eq!(ends.len(), m);
        let want = t * (2.0 + 1.0 / m as f64) + 4.0 * pulse_time(omega) * m as f64;
        prop_assert!((seq.device_time() - want).abs() <= 1e-10 * want);
    }
}

#[test]
fn pi_pulse_cancels_mixed_terms() {
    let g = word_generator(&words::y_pi(&dimer(), 1e-4).unwrap()).unwrap();
    for (a, b) in [(Axis::X, Axis::Z), (Axis::Z, Axis::X)] {
        assert!(g.coefficient(&PauliString::pair(0, a, 1, b)).abs() < 1e-8);
    }
    let lead = first_order_generator(&words::y_pi(&dimer(), 1e-4).unwrap()).unwrap();
    assert!(lead.coefficient(&PauliString::pair(0, Axis::X, 1, Axis::Z)).abs() < 1e-12);
}

#[test]
fn bias_is_first_order_in_pulse_length() {
    let bias = verify_pulse_bias(|e| words::xxz(&dimer(), e), &[1e-2, 5e-3, 2.5e-3]).unwrap();
    assert!((bias.order - 2.0).abs() < 0.1, "residual order {}", bias.order);
    let want = PauliSum::from_terms(
        2,
        [(1.0, Axis::X), (1.0, Axis::Y), (2.0, Axis::Z)].map(|(w, a)| (w, PauliString::pair(0, a, 1, a))),
    )
    .unwrap();
    assert!(bias.leading.approx_eq(&want, 1e-12), "{:?}", bias.leading);
}

#[test]
fn schedule_files_round_trip() {
    let c = dimer();
    let plan = TrotterPlan::new(TrotterOrder::First, 3, 2.0, 0.5).unwrap();
    let (seq, _) = plan.sequence(&c, 8.0).unwrap();
    let mut buf = Vec::new();
    seq.write_schedule(&mut buf).unwrap();
    let gates = PulseSequence::read_gates(buf.as_slice()).unwrap();
    assert_eq!(gates, seq.gates);
}
