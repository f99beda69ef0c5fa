// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::protocol::{run_spiral_with, SpiralConfig};
use crate::engine::dense::Spectrum;
use crate::error::{Error, Result};
use crate::model::schedule::PathShape;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub param: f64,
    pub energy: f64,
    pub overlap: f64,
}

/// One spiral per parameter value, plus the probe's two lowest levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis: String,
    pub points: Vec<SweepPoint>,
    pub e0: f64,
    /// First level above the (possibly degenerate) ground multiplet.
    pub e1: f64,
}

impl SweepResult {
    pub fn energies(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.energy).collect()
    }

    /// CSV with columns `param,energy,overlap,E0,E1`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["param", "energy", "overlap", "E0", "E1"])?;
        for p in &self.points {
            out.write_record([p.param, p.energy, p.overlap, self.e0, self.e1].map(|v| format!("{v:?}")))?;
        }
        out.flush()?;
        Ok(())
    }
}

pub(crate) fn check_increasing(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("empty {what} grid")));
    }
    if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidArgument(format!("{what} values must be positive")));
    }
    if values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(format!("{what} values must be strictly increasing")));
    }
    Ok(())
}

/// Runs `make(cfg, v)` for every value, in parallel, keeping input order.
pub fn sweep_with<F>(cfg: &SpiralConfig, axis: &str, values: &[f64], make: F) -> Result<SweepResult>
where
    F: Fn(&SpiralConfig, f64) -> Result<SpiralConfig> + Sync,
{
    check_increasing(values, axis)?;
    let reference = Spectrum::new(&cfg.probe)?;
    let points = values
        .par_iter()
        .map(|&v| {
            let out = run_spiral_with(&make(cfg, v)?, &reference)?;
            Ok(SweepPoint {
                param: v,
                energy: out.final_energy,
                overlap: out.ground_overlap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        axis: axis.to_owned(),
        points,
        e0: reference.ground_energy(),
        e1: reference.first_excited_energy().unwrap_or(f64::NAN),
    })
}

/// Drive-frequency sweep with the penalty off and a linear path; the total
/// time is taken from `cfg`.
pub fn sweep_omega(cfg: &SpiralConfig, omegas: &[f64]) -> Result<SweepResult> {
    sweep_with(cfg, "omega", omegas, |c, w| {
        let sched = c.sched.with_omega(w).with_hp0(0.0).with_path(PathShape::Linear);
        sched.validate()?;
        Ok(c.with_schedule(sched))
    })
}

/// Total-time sweep with everything else taken from `cfg`.
pub fn sweep_time(cfg: &SpiralConfig, times: &[f64]) -> Result<SweepResult> {
    sweep_with(cfg, "T", times, |c, t| {
        let sched = c.sched.with_total_time(t);
        sched.validate()?;
        Ok(c.with_schedule(sched))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::evolve::EvolutionOptions;
    use crate::model::lattice::LatticeSpec;
    use crate::model::schedule::Schedule;

    fn cfg() -> SpiralConfig {
        SpiralConfig::new(
            LatticeSpec::chain(2, 1.0).unwrap(),
            Schedule::linear(4.0, 8.0, 0.2).unwrap(),
        )
        .unwrap()
        .with_options(EvolutionOptions {
            samples: 9,
            ..Default::default()
        })
    }

    #[test]
    fn grid_must_increase() {
        assert!(sweep_time(&cfg(), &[2.0, 1.0]).is_err());
        assert!(sweep_time(&cfg(), &[1.0, 1.0]).is_err());
        assert!(sweep_omega(&cfg(), &[-1.0]).is_err());
        assert!(sweep_omega(&cfg(), &[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let r = sweep_time(&cfg(), &[1.0, 2.0]).unwrap();
        assert_eq!(r.points.len(), 2);
        assert!((r.e0 + 3.0).abs() < 1e-12);
        assert!((r.e1 - 1.0).abs() < 1e-12);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "param,energy,overlap,E0,E1");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1.0,"));
    }

    #[test]
    fn omega_sweep_ignores_penalty_and_path() {
        let base = cfg();
        let r = sweep_omega(&base, &[8.0]).unwrap();
        let mut plain = base.clone();
        plain.sched = plain.sched.with_hp0(0.0);
        let direct = crate::spiral::run_spiral(&plain).unwrap();
        assert_eq!(r.points[0].energy, direct.final_energy);
    }
}
