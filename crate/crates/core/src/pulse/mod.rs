// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Analog gates, Magnus diagnostics and Trotterized preparation.

pub mod compare;
pub mod gates;
pub mod magnus;
pub mod trotter;

pub use compare::{compare_protocols, CompareOptions, ComparisonTable};
pub use gates::{apply_analog_gate, pulse_time, AnalogGate, GateKind, PulseSequence};
pub use magnus::{first_order_generator, magnus_leading, verify_pulse_bias, word_generator, words, PulseBias};
pub use trotter::{
    max_feasible_steps, run_trotter, second_order_schedule, trotter_first_order, trotter_second_order,
    SecondOrderSchedule, SecondOrderStep, TrotterOrder, TrotterPlan, TrotterRun,
};
