// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

// NaN must fail every range check, so negated comparisons are deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod annealer;
pub mod config;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod model;
pub mod optim;
pub mod pulse;
pub mod spiral;

pub use annealer::*;
pub use engine::*;
pub use config::{Command, ExperimentConfig};
pub use error::{Error, Result};
pub use experiment::{config_from_manifest, run_experiment, RunReport};
pub use model::*;
pub use pulse::*;
pub use spiral::*;
