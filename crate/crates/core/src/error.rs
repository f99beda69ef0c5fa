// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the subsystem that raises them so callers (the
/// CLI in particular) can map them onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    // model
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("time {t} outside [{start}, {end}]")]
    TimeOutOfRange { t: f64, start: f64, end: f64 },
    #[error("non-Hermitian term: {0}")]
    NonHermitian(String),
    #[error("site {site} out of range for {nsites} sites")]
    SiteOutOfRange { site: usize, nsites: usize },
    #[error("atoms {0} and {1} coincide")]
    CoincidentAtoms(usize, usize),

    // engine
    #[error("dimension mismatch: expected {expected} sites, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("{nsites} sites exceeds the dense limit of {limit}")]
    TooManySites { nsites: usize, limit: usize },
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("expectation value has imaginary part {0:e}; operator is not Hermitian")]
    ImaginaryExpectation(f64),
    #[error("no convergence after {steps} steps (last refinement changed the state by {delta:e})")]
    NonConvergence { steps: usize, delta: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    // spiral / optimizers
    #[error("optimizer did not converge within {0} iterations")]
    OptimizerCap(usize),
    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    // pulse
    #[error("matrix logarithm is ambiguous: eigenphase {0} is too close to the branch cut")]
    LogBranch(f64),

    // annealer
    #[error("no unique crossing: {0}")]
    NoCrossing(String),

    // config / io
    #[error("config error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config { line: Option<usize>, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn config(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: message.into(),
        }
    }

    /// True for errors that indicate a bad input rather than a numerical failure.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NonConvergence { .. }
                | Error::OptimizerCap(_)
                | Error::LogBranch(_)
                | Error::ImaginaryExpectation(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
        )
    }

    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::OptimizerCap(_) | Error::LogBranch(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
