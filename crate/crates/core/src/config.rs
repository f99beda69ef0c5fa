// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML experiment configuration.
//!
//! One file describes one experiment: a `command`, the `[lattice]`, and the
//! blocks that command reads. Unknown keys are rejected, and every error
//! carries the line of the offending key or block.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::annealer::{AnnealProblem, AnnealSchedule, AnnealStart, AnnealTable, CouplingNoise, Waypoint};
use crate::engine::evolve::EvolutionOptions;
use crate::error::{Error, Result};
use crate::model::lattice::LatticeSpec;
use crate::model::schedule::{f_final, PathShape, Schedule};
use crate::pulse::{CompareOptions, TrotterOrder, TrotterPlan};
use crate::spiral::{Basis, PathSearch, PenaltySearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Spiral,
    SweepOmega,
    SweepTime,
    OptimizeHp,
    OptimizePath,
    Trotter,
    Compare,
    Anneal,
    FloquetCheck,
    Eigensolve,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spiral => "spiral",
            Command::SweepOmega => "sweep-omega",
            Command::SweepTime => "sweep-time",
            Command::OptimizeHp => "optimize-hp",
            Command::OptimizePath => "optimize-path",
            Command::Trotter => "trotter",
            Command::Compare => "compare",
            Command::Anneal => "anneal",
            Command::FloquetCheck => "floquet-check",
            Command::Eigensolve => "eigensolve",
        }
    }
}

/// `[schedule]`: one spiral run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleBlock {
    pub total_time: f64,
    pub omega: f64,
    #[serde(default)]
    pub hp0: f64,
    /// Sine coefficients `β_n` of the path; empty for the linear path.
    #[serde(default)]
    pub betas: Vec<f64>,
    #[serde(default)]
    pub basis: Basis,
    /// Optional echo of the end-point drive; must be `√(2/3)`.
    pub f_end: Option<Spanned<f64>>,
    /// Optional echo of the end-point penalty; must be 0.
    pub hp_end: Option<Spanned<f64>>,
}

impl ScheduleBlock {
    pub fn schedule(&self) -> Result<Schedule> {
        let path = if self.betas.is_empty() {
            PathShape::Linear
        } else {
            PathShape::SineAugmented {
                betas: self.betas.clone(),
            }
        };
        Schedule::new(self.total_time, self.omega, self.hp0, path)
    }
}

/// `[sweep]`: grid for `sweep-omega`, `sweep-time` and `compare`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    pub values: Vec<f64>,
}

/// `[optimize]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizeBlock {
    pub penalty: PenaltySearch,
    /// Number of sine coefficients for `optimize-path`.
    pub modes: Option<usize>,
    pub path: PathSearch,
}

/// `[trotter]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrotterBlock {
    pub omega: f64,
    pub plan: TrotterPlan,
    /// Ising couplings of the gates relative to the lattice's.
    #[serde(default = "unit")]
    pub coupling_scale: f64,
}

fn unit() -> f64 {
    1.0
}

/// `[anneal]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealBlock {
    /// Three-column `s A B` table in MHz; the synthetic table if absent.
    /// Relative paths resolve against the config file's directory.
    pub table: Option<PathBuf>,
    pub h: f64,
    /// Explicit `s(t)`; otherwise built from `ramp`, `dwell`, `exit` around `s*`.
    pub waypoints: Option<Vec<Waypoint>>,
    pub ramp: Option<f64>,
    pub dwell: Option<f64>,
    pub exit: Option<f64>,
    pub max_slew: Option<f64>,
    #[serde(default)]
    pub start: AnnealStart,
    /// Coupling noise; its seed defaults to the experiment seed.
    pub noise_sigma: Option<f64>,
}

/// `[floquet]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FloquetBlock {
    pub omegas: Vec<f64>,
    /// Tilt angle; the magic angle `arccos(1/√3)` if absent.
    pub theta: Option<f64>,
}

/// `[eigensolve]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigensolveBlock {
    #[serde(default = "two")]
    pub levels: usize,
}

fn two() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: Command,
    #[serde(default)]
    pub seed: u64,
    pub lattice: Spanned<LatticeSpec>,
    pub schedule: Option<Spanned<ScheduleBlock>>,
    /// Integrator settings; each command has its own default.
    pub evolution: Option<EvolutionOptions>,
    pub sweep: Option<Spanned<SweepBlock>>,
    pub optimize: Option<Spanned<OptimizeBlock>>,
    pub trotter: Option<Spanned<TrotterBlock>>,
    pub compare: Option<Spanned<CompareOptions>>,
    pub anneal: Option<Spanned<AnnealBlock>>,
    pub floquet: Option<Spanned<FloquetBlock>>,
    pub eigensolve: Option<Spanned<EigensolveBlock>>,
    /// Directory that relative paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// 1-based line of byte offset `pos`.
fn line_of(text: &str, pos: usize) -> usize {
    text[..pos.min(text.len())].bytes().filter(|b| *b == b'\n').count() + 1
}

impl ExperimentConfig {
    /// Parses and validates.
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| {
            let line = e.span().map(|s| line_of(text, s.start));
            Error::config(line, e.message().trim().to_owned())
        })?;
        cfg.validate(text)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(None, format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    fn validate(&self, text: &str) -> Result<()> {
        let at = |span: std::ops::Range<usize>| Some(line_of(text, span.start));
        let wrap = |span: std::ops::Range<usize>, block: &'static str| {
            move |e: Error| match e {
                Error::Config { .. } => e,
                other => Error::config(at(span.clone()), format!("[{block}]: {other}")),
            }
        };
        self.lattice.get_ref().validate().map_err(wrap(self.lattice.span(), "lattice"))?;
        self.evolution()
            .validate()
            .map_err(|e| Error::config(None, format!("[evolution]: {e}")))?;
        if let Some(s) = &self.schedule {
            let b = s.get_ref();
            if let Some(f) = &b.f_end {
                if (f.get_ref() - f_final()).abs() > 1e-12 {
                    return Err(Error::config(
                        at(f.span()),
                        format!("f_end = {} but the drive must end at √(2/3) = {}", f.get_ref(), f_final()),
                    ));
                }
            }
            if let Some(h) = &b.hp_end {
                if *h.get_ref() != 0.0 {
                    return Err(Error::config(
                        at(h.span()),
                        format!("hp_end = {} but the penalty must end at 0", h.get_ref()),
                    ));
                }
            }
            b.schedule().map_err(wrap(s.span(), "schedule"))?;
        }
        let need = |present: bool, block: &str| -> Result<()> {
            if present {
                Ok(())
            } else {
                Err(Error::config(
                    None,
                    format!("command `{}` needs a [{block}] block", self.command.name()),
                ))
            }
        };
        match self.command {
            Command::Spiral | Command::OptimizeHp | Command::OptimizePath => {
                need(self.schedule.is_some(), "schedule")?
            }
            Command::SweepOmega | Command::SweepTime | Command::Compare => {
                need(self.schedule.is_some(), "schedule")?;
                need(self.sweep.is_some(), "sweep")?;
            }
            Command::Trotter => need(self.trotter.is_some(), "trotter")?,
            Command::Anneal => need(self.anneal.is_some(), "anneal")?,
            Command::FloquetCheck => need(self.floquet.is_some(), "floquet")?,
            Command::Eigensolve => {}
        }
        if let Some(s) = &self.sweep {
            crate::spiral::sweep::check_increasing(&s.get_ref().values, "sweep")
                .map_err(wrap(s.span(), "sweep"))?;
        }
        if let Some(t) = &self.trotter {
            let b = t.get_ref();
            b.plan.validate().map_err(wrap(t.span(), "trotter"))?;
            if !(b.omega > 0.0 && b.coupling_scale > 0.0) {
                return Err(Error::config(at(t.span()), "[trotter]: omega and coupling_scale must be positive"));
            }
            b.plan.device_time(b.omega).map_err(wrap(t.span(), "trotter"))?;
        }
        if let Some(o) = &self.optimize {
            if self.command == Command::OptimizePath && o.get_ref().modes.is_none_or(|m| m == 0) {
                return Err(Error::config(at(o.span()), "[optimize]: optimize-path needs modes ≥ 1"));
            }
        } else if self.command == Command::OptimizePath {
            need(false, "optimize")?;
        }
        if let Some(a) = &self.anneal {
            self.anneal_schedule().map_err(wrap(a.span(), "anneal"))?;
        }
        if let Some(f) = &self.floquet {
            let b = f.get_ref();
            if b.omegas.len() < 2 || b.omegas.iter().any(|w| !(*w > 0.0)) {
                return Err(Error::config(at(f.span()), "[floquet]: need at least two positive omegas"));
            }
        }
        if let Some(e) = &self.eigensolve {
            if e.get_ref().levels == 0 {
                return Err(Error::config(at(e.span()), "[eigensolve]: levels must be ≥ 1"));
            }
        }
        Ok(())
    }

    pub fn evolution(&self) -> EvolutionOptions {
        match (&self.evolution, self.command) {
            (Some(o), _) => o.clone(),
            (None, Command::Anneal) => AnnealProblem::default_options(),
            (None, _) => EvolutionOptions::default(),
        }
    }

    /// Copy with defaults made explicit and relative paths resolved.
    pub fn resolved(&self) -> Result<Self> {
        let mut cfg = self.clone();
        cfg.evolution = Some(self.evolution());
        if let Some(a) = cfg.anneal.as_mut() {
            if let Some(p) = a.get_mut().table.as_mut() {
                if p.is_relative() {
                    *p = self.base_dir.join(&*p);
                }
            }
        }
        Ok(cfg)
    }

    /// [`ExperimentConfig::resolved`] as TOML.
    pub fn resolved_toml(&self) -> Result<String> {
        toml::to_string(&self.resolved()?).map_err(|e| Error::config(None, format!("cannot serialize config: {e}")))
    }

    pub fn lattice(&self) -> &LatticeSpec {
        self.lattice.get_ref()
    }

    /// The `[schedule]` block as a validated schedule.
    pub fn schedule(&self) -> Result<Option<(Schedule, Basis)>> {
        self.schedule
            .as_ref()
            .map(|s| Ok((s.get_ref().schedule()?, s.get_ref().basis)))
            .transpose()
    }

    pub fn anneal_table(&self) -> Result<Option<AnnealTable>> {
        let Some(a) = &self.anneal else { return Ok(None) };
        Ok(Some(match &a.get_ref().table {
            Some(p) => AnnealTable::from_file(&self.base_dir.join(p))?,
            None => AnnealTable::synthetic(),
        }))
    }

    pub fn anneal_schedule(&self) -> Result<Option<AnnealSchedule>> {
        let Some(a) = &self.anneal else { return Ok(None) };
        let b = a.get_ref();
        let table = self.anneal_table()?.expect("anneal block present");
        let sched = match (&b.waypoints, b.ramp, b.dwell, b.exit) {
            (Some(w), None, None, None) => AnnealSchedule::new(table, w.clone(), b.h, b.max_slew)?,
            (None, Some(r), d, Some(x)) => {
                let mut s = AnnealSchedule::reverse_spiral(table, b.h, r, d.unwrap_or(0.0), x)?;
                s.max_slew = b.max_slew;
                s.validate()?;
                s
            }
            _ => {
                return Err(Error::config(
                    None,
                    "give either `waypoints` or `ramp` and `exit` (with optional `dwell`)",
                ))
            }
        };
        Ok(Some(sched))
    }

    pub fn anneal_noise(&self) -> Option<CouplingNoise> {
        let sigma = self.anneal.as_ref()?.get_ref().noise_sigma?;
        Some(CouplingNoise { sigma, seed: self.seed })
    }

    pub fn trotter_order(&self) -> Option<TrotterOrder> {
        self.trotter.as_ref().map(|t| t.get_ref().plan.order)
    }
}
