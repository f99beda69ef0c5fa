// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Variational tuning of the penalty strength and of the drive path.

use serde::{Deserialize, Serialize};

use super::protocol::{run_spiral_with, SpiralConfig};
use crate::engine::dense::Spectrum;
use crate::error::{Error, Result};
use crate::model::schedule::{f_final, PathShape, Schedule};
use crate::optim::{golden_section, nelder_mead, Minimum, SimplexOptions};

/// Settings of the one-dimensional penalty search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PenaltySearch {
    pub bracket: (f64, f64),
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for PenaltySearch {
    fn default() -> Self {
        Self {
            bracket: (0.0, 1.0),
            xtol: 1e-3,
            max_iter: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PenaltyOptimum {
    pub hp0: f64,
    pub energy: f64,
    pub search: Minimum,
}

/// Minimizes the final probe energy over `h_P(0)` within `bracket`.
pub fn optimize_penalty(cfg: &SpiralConfig, bracket: (f64, f64)) -> Result<PenaltyOptimum> {
    optimize_penalty_with(
        cfg,
        &PenaltySearch {
            bracket,
            ..Default::default()
        },
    )
}

pub fn optimize_penalty_with(cfg: &SpiralConfig, search: &PenaltySearch) -> Result<PenaltyOptimum> {
    let (a, b) = search.bracket;
    if !(0.0 <= a && a < b && b <= cfg.sched.omega) {
        return Err(Error::InvalidArgument(format!(
            "penalty bracket [{a}, {b}] must lie within [0, Ω = {}]",
            cfg.sched.omega
        )));
    }
    let reference = Spectrum::new(&cfg.probe)?;
    let search = golden_section(
        |hp| Ok(run_spiral_with(&cfg.with_schedule(cfg.sched.with_hp0(hp)), &reference)?.final_energy),
        a,
        b,
        search.xtol,
        search.max_iter,
    )?;
    Ok(PenaltyOptimum {
        hp0: search.x[0],
        energy: search.value,
        search,
    })
}

/// Settings of the multi-coefficient path search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PathSearch {
    /// Upper bound on `f(t)` over the whole run.
    pub max_drive: f64,
    /// Grid used to locate the maximum of `f`.
    pub grid: usize,
    pub simplex: SimplexOptions,
}

impl Default for PathSearch {
    fn default() -> Self {
        Self {
            max_drive: f_final(),
            grid: 400,
            simplex: SimplexOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathOptimum {
    /// `β₁ … β_{N−1}`.
    pub betas: Vec<f64>,
    pub energy: f64,
    /// Energy of the linear path, the search's starting point.
    pub linear_energy: f64,
    pub search: Option<Minimum>,
}

fn fits(sched: &Schedule, betas: &[f64], search: &PathSearch) -> bool {
    let s = sched.with_path(PathShape::SineAugmented {
        betas: betas.to_vec(),
    });
    s.max_f(search.grid) <= search.max_drive * (1.0 + 1e-12)
}

/// Pulls `betas` toward zero along the ray from the origin until the drive
/// bound holds. The linear path is always the fallback.
pub fn project_betas(sched: &Schedule, betas: &[f64], search: &PathSearch) -> Result<Vec<f64>> {
    if search.max_drive < f_final() * (1.0 - 1e-12) {
        return Err(Error::Infeasible(format!(
            "drive bound {} is below the end point √(2/3) = {}",
            search.max_drive,
            f_final()
        )));
    }
    if fits(sched, betas, search) {
        return Ok(betas.to_vec());
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let scaled: Vec<f64> = betas.iter().map(|b| b * mid).collect();
        if fits(sched, &scaled, search) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(betas.iter().map(|b| b * lo).collect())
}

/// Searches `β₁ … β_{N−1}` from the linear path under the drive bound
/// `max_drive`.
pub fn optimize_path(cfg: &SpiralConfig, n: usize, max_drive: f64) -> Result<PathOptimum> {
    optimize_path_with(
        cfg,
        n,
        &PathSearch {
            max_drive,
            ..Default::default()
        },
    )
}

pub fn optimize_path_with(cfg: &SpiralConfig, n: usize, search: &PathSearch) -> Result<PathOptimum> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    // validates the bound before any simulation
    project_betas(&cfg.sched, &[], search)?;
    let reference = Spectrum::new(&cfg.probe)?;
    let energy_of = |betas: &[f64]| -> Result<f64> {
        let sched = cfg.sched.with_path(PathShape::SineAugmented {
            betas: betas.to_vec(),
        });
        Ok(run_spiral_with(&cfg.with_schedule(sched), &reference)?.final_energy)
    };
    let linear_energy = energy_of(&[])?;
    if n == 1 {
        return Ok(PathOptimum {
            betas: vec![],
            energy: linear_energy,
            linear_energy,
            search: None,
        });
    }
    let minimum = nelder_mead(
        energy_of,
        |b| project_betas(&cfg.sched, b, search),
        &vec![0.0; n - 1],
        &search.simplex,
    )?;
    Ok(PathOptimum {
        betas: minimum.x.clone(),
        energy: minimum.value,
        linear_energy,
        search: Some(minimum),
    })
}
