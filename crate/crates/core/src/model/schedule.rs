// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-dependent control functions of the spiral.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `√(2/3)`: the end point of the drive tilt, where `cos θ = 1/√3`.
pub fn f_final() -> f64 {
    (2.0f64 / 3.0).sqrt()
}

/// `sin(π x)` with exact zeros at integer `x`.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        0.0
    } else {
        (PI * r).sin()
    }
}

/// Shape of the drive tilt `f(t)`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum PathShape {
    /// `f(t) = √(2/3)·t/T`
    #[default]
    Linear,
    /// `f(t) = √(2/3)(t/T + Σ_n β_n sin(nπt/T))`, `betas[0]` being `β₁`.
    SineAugmented { betas: Vec<f64> },
}

impl PathShape {
    pub fn betas(&self) -> &[f64] {
        match self {
            PathShape::Linear => &[],
            PathShape::SineAugmented { betas } => betas,
        }
    }

    /// Normalized tilt `f(t)/√(2/3)` at fraction `u = t/T`.
    fn profile(&self, u: f64) -> f64 {
        u + self
            .betas()
            .iter()
            .enumerate()
            .map(|(k, b)| b * sin_pi((k + 1) as f64 * u))
            .sum::<f64>()
    }
}

/// Total time, drive frequency, initial penalty and path of one spiral.
///
/// The penalty ramps linearly from `hp0` to zero; `f` runs from 0 to `√(2/3)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub total_time: f64,
    pub omega: f64,
    pub hp0: f64,
    #[serde(default)]
    pub path: PathShape,
}

impl Schedule {
    pub fn linear(total_time: f64, omega: f64, hp0: f64) -> Result<Self> {
        Self::new(total_time, omega, hp0, PathShape::Linear)
    }

    pub fn new(total_time: f64, omega: f64, hp0: f64, path: PathShape) -> Result<Self> {
        let s = Self {
            total_time,
            omega,
            hp0,
            path,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.total_time.is_finite() && self.total_time > 0.0) {
            return Err(Error::InvalidSchedule(format!("T = {}", self.total_time)));
        }
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::InvalidSchedule(format!("Ω = {}", self.omega)));
        }
        if !self.hp0.is_finite() {
            return Err(Error::InvalidSchedule(format!("h_P(0) = {}", self.hp0)));
        }
        if let Some(b) = self.path.betas().iter().find(|b| !b.is_finite()) {
            return Err(Error::InvalidSchedule(format!("β = {b}")));
        }
        Ok(())
    }

    pub fn with_total_time(&self, total_time: f64) -> Self {
        Self {
            total_time,
            ..self.clone()
        }
    }

    pub fn with_omega(&self, omega: f64) -> Self {
        Self {
            omega,
            ..self.clone()
        }
    }

    pub fn with_hp0(&self, hp0: f64) -> Self {
        Self {
            hp0,
            ..self.clone()
        }
    }

    pub fn with_path(&self, path: PathShape) -> Self {
        Self {
            path,
            ..self.clone()
        }
    }

    pub fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.total_time).contains(&t) {
            Ok(())
        } else {
            Err(Error::TimeOutOfRange {
                t,
                start: 0.0,
                end: self.total_time,
            })
        }
    }

    /// Drive tilt `f(t)`.
    pub fn f(&self, t: f64) -> f64 {
        f_final() * self.path.profile(t / self.total_time)
    }

    /// Penalty `h_P(t) = h_P(0)(1 − t/T)`.
    pub fn penalty(&self, t: f64) -> f64 {
        self.hp0 * (1.0 - t / self.total_time)
    }

    /// Largest `f(t)` over `[0, T]`: the best of `samples + 1` uniform grid
    /// points, polished by a golden-section search on its two neighboring cells.
    pub fn max_f(&self, samples: usize) -> f64 {
        let samples = samples.max(1);
        let h = self.total_time / samples as f64;
        let (k, best) = (0..=samples)
            .map(|k| (k, self.f(h * k as f64)))
            .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
        let (mut lo, mut hi) = (
            (k as f64 - 1.0).max(0.0) * h,
            ((k + 1) as f64 * h).min(self.total_time),
        );
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..80 {
            let a = hi - ratio * (hi - lo);
            let b = lo + ratio * (hi - lo);
            if self.f(a) >= self.f(b) {
                hi = b;
            } else {
                lo = a;
            }
        }
        best.max(self.f(0.5 * (lo + hi)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn boundary_values() {
        let s = Schedule::new(
            25.0,
            8.0,
            0.18,
            PathShape::SineAugmented {
                betas: vec![1.0 / PI, 0.2, -0.1],
            },
        )
        .unwrap();
        assert_eq!(s.f(0.0), 0.0);
        assert_eq!(s.f(25.0), f_final());
        assert_eq!(s.penalty(25.0), 0.0);
        assert_eq!(s.penalty(0.0), 0.18);
    }

    #[test]
    fn linear_midpoint() {
        let s = Schedule::linear(10.0, 8.0, 0.0).unwrap();
        assert!((s.f(5.0) - 0.5 * f_final()).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(Schedule::linear(0.0, 8.0, 0.0).is_err());
        assert!(Schedule::linear(1.0, -1.0, 0.0).is_err());
        assert!(Schedule::linear(1.0, 1.0, f64::NAN).is_err());
        let s = Schedule::linear(1.0, 1.0, 0.0).unwrap();
        assert!(s.check_time(1.5).is_err());
        assert!(s.check_time(-1e-9).is_err());
    }

    #[test]
    fn beta_at_one_over_pi_keeps_drive_below_endpoint() {
        let s = Schedule::new(
            25.0,
            8.0,
            0.0,
            PathShape::SineAugmented {
                betas: vec![1.0 / PI],
            },
        )
        .unwrap();
        assert!(s.max_f(200) <= f_final());
        let over = s.with_path(PathShape::SineAugmented {
            betas: vec![1.0 / PI + 1e-5],
        });
        assert!(over.max_f(200) > f_final());
    }

    #[test]
    fn sin_pi_zeros() {
        for k in -4..=4 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-15);
        assert!((sin_pi(1.5) + 1.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn zero_betas_match_linear(t in 0.0f64..30.0, n in 1usize..5) {
            let lin = Schedule::linear(30.0, 8.0, 0.3).unwrap();
            let sine = lin.with_path(PathShape::SineAugmented { betas: vec![0.0; n] });
            prop_assert_eq!(lin.f(t), sine.f(t));
        }

        #[test]
        fn endpoints_hold_for_any_betas(betas in proptest::collection::vec(-1.0f64..1.0, 0..5), tt in 0.5f64..100.0) {
            let s = Schedule::new(tt, 8.0, 0.2, PathShape::SineAugmented { betas }).unwrap();
            prop_assert_eq!(s.f(0.0), 0.0);
            prop_assert_eq!(s.f(tt), f_final());
            prop_assert_eq!(s.penalty(tt), 0.0);
        }
    }
}
