// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Annealer control functions `A(s)`, `B(s)` and the programmed path `s(t)`.

use std::f64::consts::SQRT_2;
use std::io::BufRead;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tabulated `A(s)` and `B(s)` in MHz, linearly interpolated between knots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealTable {
    s: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Scale of the synthetic default table, in MHz.
pub const SYNTHETIC_SCALE_MHZ: f64 = 1000.0;

impl AnnealTable {
    /// Knots must start at `s = 0`, end at `s = 1` and increase strictly.
    pub fn new(s: Vec<f64>, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if s.len() < 2 || a.len() != s.len() || b.len() != s.len() {
            return Err(Error::InvalidSchedule("need at least two (s, A, B) rows of equal length".into()));
        }
        if s[0] != 0.0 || s[s.len() - 1] != 1.0 {
            return Err(Error::InvalidSchedule(format!(
                "table must span s ∈ [0, 1], got [{}, {}]",
                s[0],
                s[s.len() - 1]
            )));
        }
        if s.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidSchedule("s must increase strictly".into()));
        }
        if a.iter().chain(&b).any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidSchedule("A and B must be finite and non-negative".into()));
        }
        Ok(Self { s, a, b })
    }

    /// Synthetic stand-in for a hardware table: `A = A₀(1 − s)²`, `B = B₀ s`
    /// on 101 knots, both scales [`SYNTHETIC_SCALE_MHZ`]. Not hardware data.
    pub fn synthetic() -> Self {
        let s: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
        let a = s.iter().map(|x| SYNTHETIC_SCALE_MHZ * (1.0 - x).powi(2)).collect();
        let b = s.iter().map(|x| SYNTHETIC_SCALE_MHZ * x).collect();
        Self::new(s, a, b).expect("synthetic table is valid")
    }

    /// Three whitespace- or comma-separated columns `s A B`; `#` starts a comment.
    pub fn parse<R: BufRead>(r: R) -> Result<Self> {
        let (mut s, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
        for (k, line) in r.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != 3 {
                return Err(Error::config(Some(k + 1), format!("expected `s A B`, got {body:?}")));
            }
            let mut row = [0.0; 3];
            for (slot, f) in row.iter_mut().zip(&fields) {
                *slot = f
                    .parse()
                    .map_err(|_| Error::config(Some(k + 1), format!("not a number: {f:?}")))?;
            }
            s.push(row[0]);
            a.push(row[1]);
            b.push(row[2]);
        }
        Self::new(s, a, b)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(std::io::BufReader::new(std::fs::File::open(path)?))
    }

    pub fn knots(&self) -> &[f64] {
        &self.s
    }

    /// `(A(s), B(s))` in MHz.
    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidSchedule(format!("s = {s} outside [0, 1]")));
        }
        let k = self.s.partition_point(|x| *x <= s).clamp(1, self.s.len() - 1);
        if s == self.s[k] {
            return Ok((self.a[k], self.b[k]));
        }
        let (s0, s1) = (self.s[k - 1], self.s[k]);
        let w = (s - s0) / (s1 - s0);
        let lerp = |v: &[f64]| v[k - 1] + w * (v[k] - v[k - 1]);
        Ok((lerp(&self.a), lerp(&self.b)))
    }
}

/// The `s*` with `A(s*) = √2 h B(s*)`, where the local field sits at the
/// magic angle `arccos(1/√3)` from the Ising axis.
///
/// The interpolated `A − √2 h B` must change sign exactly once and be
/// nonzero away from the root.
pub fn find_s_star(table: &AnnealTable, h: f64) -> Result<f64> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!("h = {h}")));
    }
    let g = |s: f64| -> Result<f64> {
        let (a, b) = table.eval(s)?;
        Ok(a - SQRT_2 * h * b)
    };
    let values: Vec<f64> = table.knots().iter().map(|&s| g(s)).collect::<Result<_>>()?;
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    let zero = |v: f64| v.abs() <= 1e-12 * scale;
    if values.windows(2).any(|w| zero(w[0]) && zero(w[1])) {
        return Err(Error::NoCrossing(format!(
            "A(s) − √2·h·B(s) vanishes on a whole interval for h = {h}"
        )));
    }
    let signs: Vec<f64> = values.iter().filter(|v| !zero(**v)).map(|v| v.signum()).collect();
    let flips = signs.windows(2).filter(|w| w[0] != w[1]).count();
    if flips != 1 {
        return Err(Error::NoCrossing(format!(
            "A(s) − √2·h·B(s) changes sign {flips} times on [0, 1] for h = {h}"
        )));
    }
    let knots = table.knots();
    if let Some(k) = values.iter().position(|v| zero(*v)) {
        return Ok(knots[k]);
    }
    let k = values.windows(2).position(|w| w[0].signum() != w[1].signum()).expect("one flip");
    let (mut lo, mut hi) = (knots[k], knots[k + 1]);
    let lo_sign = values[k].signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid)?.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// A point `(time [μs], s)` of the programmed path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Waypoint {
    pub time: f64,
    pub s: f64,
}

/// Programmed anneal: control table, piecewise-linear `s(t)` and the
/// staggered longitudinal field `h`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealSchedule {
    pub table: AnnealTable,
    pub waypoints: Vec<Waypoint>,
    pub h: f64,
    /// Largest allowed `|ds/dt|` in 1/μs.
    pub max_slew: Option<f64>,
}

impl AnnealSchedule {
    pub fn new(table: AnnealTable, waypoints: Vec<Waypoint>, h: f64, max_slew: Option<f64>) -> Result<Self> {
        let s = Self {
            table,
            waypoints,
            h,
            max_slew,
        };
        s.validate()?;
        Ok(s)
    }

    /// Reverse anneal from `s = 1` to `s*`, a dwell there, and back to `s = 1`.
    pub fn reverse_spiral(table: AnnealTable, h: f64, ramp: f64, dwell: f64, exit: f64) -> Result<Self> {
        let s_star = find_s_star(&table, h)?;
        let mut t = 0.0;
        let mut waypoints = vec![Waypoint { time: 0.0, s: 1.0 }];
        for (dt, s) in [(ramp, s_star), (dwell, s_star), (exit, 1.0)] {
            if dt > 0.0 {
                t += dt;
                waypoints.push(Waypoint { time: t, s });
            }
        }
        Self::new(table, waypoints, h, None)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.h.is_finite() {
            return Err(Error::InvalidSchedule(format!("h = {}", self.h)));
        }
        let w = &self.waypoints;
        if w.len() < 2 {
            return Err(Error::InvalidSchedule("need at least two waypoints".into()));
        }
        if w[0].time != 0.0 {
            return Err(Error::InvalidSchedule("the first waypoint must be at t = 0".into()));
        }
        if let Some(p) = w.iter().find(|p| !(0.0..=1.0).contains(&p.s)) {
            return Err(Error::InvalidSchedule(format!("s = {} outside [0, 1]", p.s)));
        }
        if w.windows(2).any(|p| !(p[0].time < p[1].time)) {
            return Err(Error::InvalidSchedule("waypoint times must increase strictly".into()));
        }
        for end in [w[0], w[w.len() - 1]] {
            let (a, _) = self.table.eval(end.s)?;
            if a != 0.0 {
                return Err(Error::InvalidSchedule(format!(
                    "the path must start and end where A = 0, but A({}) = {a} MHz",
                    end.s
                )));
            }
        }
        if let Some(limit) = self.max_slew {
            if !(limit > 0.0) {
                return Err(Error::InvalidSchedule(format!("slew limit {limit}")));
            }
            for p in w.windows(2) {
                let rate = (p[1].s - p[0].s).abs() / (p[1].time - p[0].time);
                if rate > limit * (1.0 + 1e-12) {
                    return Err(Error::InvalidSchedule(format!(
                        "|ds/dt| = {rate} between t = {} and {} exceeds the slew limit {limit}",
                        p[0].time, p[1].time
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.waypoints[self.waypoints.len() - 1].time
    }

    pub fn s_at(&self, t: f64) -> Result<f64> {
        let w = &self.waypoints;
        if !(0.0..=self.duration()).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                start: 0.0,
                end: self.duration(),
            });
        }
        let k = w.partition_point(|p| p.time <= t).clamp(1, w.len() - 1);
        let (p, q) = (w[k - 1], w[k]);
        Ok(p.s + (t - p.time) / (q.time - p.time) * (q.s - p.s))
    }

    /// `(A, B)` in MHz at time `t`.
    pub fn controls_at(&self, t: f64) -> Result<(f64, f64)> {
        self.table.eval(self.s_at(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn linear() -> AnnealTable {
        AnnealTable::new(vec![0.0, 1.0], vec![1.0, 0.0], vec![0.0, 1.0]).unwrap()
    }

    #[test]
    fn analytic_root() {
        let s = find_s_star(&linear(), 1.0 / SQRT_2).unwrap();
        assert!((s - 0.5).abs() < 1e-14);
    }

    #[test]
    fn degenerate_table_is_rejected() {
        let t = AnnealTable::new(vec![0.0, 1.0], vec![SQRT_2; 2], vec![1.0; 2]).unwrap();
        let err = find_s_star(&t, 1.0).unwrap_err();
        assert!(err.to_string().contains("no unique crossing"), "{err}");
        assert!(find_s_star(&linear(), 1e9).is_ok());
        let flat = AnnealTable::new(vec![0.0, 1.0], vec![1.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert!(matches!(find_s_star(&flat, 1.0), Err(Error::NoCrossing(_))));
    }

    #[test]
    fn synthetic_crossing() {
        let t = AnnealTable::synthetic();
        let s = find_s_star(&t, 2.0).unwrap();
        let (a, b) = t.eval(s).unwrap();
        assert!((a - SQRT_2 * 2.0 * b).abs() < 1e-9 * a);
        assert!(s > 0.1 && s < 0.3, "{s}");
    }

    #[test]
    fn parse_table() {
        let text = "# s A B\n0 5 0\n0.5, 1, 2 # mid\n\n1 0 4\n";
        let t = AnnealTable::parse(text.as_bytes()).unwrap();
        assert_eq!(t.eval(0.25).unwrap(), (3.0, 1.0));
        let err = AnnealTable::parse("0 1 0\n1 0 x\n".as_bytes()).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(AnnealTable::parse("0 1 0\n0.5 -1 0\n1 0 1\n".as_bytes()).is_err());
        assert!(AnnealTable::parse("0.1 1 0\n1 0 1\n".as_bytes()).is_err());
    }

    #[test]
    fn path_checks() {
        let sched = AnnealSchedule::reverse_spiral(AnnealTable::synthetic(), 2.0, 1.0, 0.5, 1.0).unwrap();
        assert_eq!(sched.waypoints.len(), 4);
        assert_eq!(sched.duration(), 2.5);
        assert_eq!(sched.s_at(0.0).unwrap(), 1.0);
        assert!(sched.s_at(2.6).is_err());
        let mut bad = sched.clone();
        bad.waypoints[3].s = 0.9;
        assert!(bad.validate().is_err());
        let mut slow = sched.clone();
        slow.max_slew = Some(0.5);
        assert!(slow.validate().is_err());
        slow.max_slew = Some(1.0);
        assert!(slow.validate().is_ok());
    }

    proptest! {
        #[test]
        fn knots_are_exact_and_monotone_segments_stay_monotone(
            rows in proptest::collection::vec((0.0f64..10.0, 0.0f64..10.0), 3..8),
            u in 0.0f64..1.0,
        ) {
            let n = rows.len();
            let s: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
            let mut a: Vec<f64> = rows.iter().map(|r| r.0).collect();
            a.sort_by(|x, y| y.total_cmp(x));
            let b: Vec<f64> = rows.iter().map(|r| r.1).collect();
            let t = AnnealTable::new(s.clone(), a.clone(), b.clone()).unwrap();
            for k in 0..n {
                prop_assert_eq!(t.eval(s[k]).unwrap(), (a[k], b[k]));
            }
            let (a0, _) = t.eval(u * 0.5).unwrap();
            let (a1, _) = t.eval(u * 0.5 + 0.5).unwrap();
            prop_assert!(a1 <= a0 + 1e-12);
        }
    }
}
