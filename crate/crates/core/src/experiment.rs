// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Runs one configured experiment and writes its artifacts.
//!
//! Every file is written to a temporary sibling and renamed into place, so an
//! interrupted run never leaves a truncated artifact. `manifest.json` is
//! written last; it holds the resolved configuration (also as TOML, which
//! `ExperimentConfig::parse` accepts unchanged) and the library version.

use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::annealer::{find_s_star, run_reverse_anneal, AnnealProblem};
use crate::config::{Command, ExperimentConfig};
use crate::engine::dense::Spectrum;
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::model::hamiltonians::target_heisenberg;
use crate::optim::{loglog_slope, Minimum};
use crate::pulse::{compare_protocols, run_trotter, CompareOptions};
use crate::spiral::{
    floquet_deviation, optimize_path_with, optimize_penalty_with, run_spiral, spiral_theta, sweep_omega, sweep_time,
    SpiralConfig,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Files written by a run, relative to the output directory, plus the
/// headline numbers also stored in `summary.json`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub files: Vec<String>,
    pub summary: Value,
}

/// Atomic writer for one output directory.
struct Artifacts {
    dir: PathBuf,
    files: Vec<String>,
}

impl Artifacts {
    fn new(dir: &Path) -> Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn write<F>(&mut self, name: &str, body: F) -> Result<()>
    where
        F: FnOnce(&mut dyn Write) -> Result<()>,
    {
        let tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = BufWriter::new(tmp.as_file());
            body(&mut w)?;
            w.flush()?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(self.dir.join(name)).map_err(|e| Error::Io(e.error))?;
        self.files.push(name.to_owned());
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            writeln!(w)?;
            Ok(())
        })
    }
}

fn trace_csv(w: &mut dyn Write, m: &Minimum) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let dim = m.trace.first().map_or(0, |e| e.x.len());
    let mut header: Vec<String> = (0..dim).map(|k| format!("x{k}")).collect();
    header.push("value".into());
    out.write_record(&header)?;
    for e in &m.trace {
        let mut row: Vec<String> = e.x.iter().map(|v| format!("{v:?}")).collect();
        row.push(format!("{:?}", e.value));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

fn spiral_config(cfg: &ExperimentConfig) -> Result<SpiralConfig> {
    let (sched, basis) = cfg
        .schedule()?
        .ok_or_else(|| Error::config(None, "missing [schedule]"))?;
    Ok(SpiralConfig::new(cfg.lattice().clone(), sched)?
        .with_basis(basis)
        .with_options(cfg.evolution()))
}

fn sweep_values(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    cfg.sweep
        .as_ref()
        .map(|s| s.get_ref().values.clone())
        .ok_or_else(|| Error::config(None, "missing [sweep]"))
}

/// Runs `cfg` and writes its artifacts under `out`.
pub fn run_experiment(cfg: &ExperimentConfig, out: &Path) -> Result<RunReport> {
    let mut art = Artifacts::new(out)?;
    let summary = match cfg.command {
        Command::Spiral => {
            let sc = spiral_config(cfg)?;
            let run = run_spiral(&sc)?;
            art.write("trajectory.csv", |w| run.evolution.write_csv(w))?;
            // one-point sweep, same layout and numbers as `sweep-time`
            let point = sweep_time(&sc, &[sc.sched.total_time])?;
            art.write("result.csv", |w| point.write_csv(w))?;
            json!({
                "final_energy": run.final_energy,
                "ground_overlap": run.ground_overlap,
                "steps": run.evolution.steps,
                "refinement": run.evolution.refinement,
                "E0": point.e0,
                "E1": point.e1,
            })
        }
        Command::SweepOmega | Command::SweepTime => {
            let sc = spiral_config(cfg)?;
            let values = sweep_values(cfg)?;
            let r = if cfg.command == Command::SweepOmega {
                sweep_omega(&sc, &values)?
            } else {
                sweep_time(&sc, &values)?
            };
            art.write("sweep.csv", |w| r.write_csv(w))?;
            json!({ "axis": r.axis, "energies": r.energies(), "E0": r.e0, "E1": r.e1 })
        }
        Command::OptimizeHp => {
            let sc = spiral_config(cfg)?;
            let search = cfg.optimize.as_ref().map(|o| o.get_ref().penalty.clone()).unwrap_or_default();
            let opt = optimize_penalty_with(&sc, &search)?;
            art.write("trace.csv", |w| trace_csv(w, &opt.search))?;
            json!({ "hp0": opt.hp0, "energy": opt.energy, "iterations": opt.search.iterations })
        }
        Command::OptimizePath => {
            let sc = spiral_config(cfg)?;
            let block = cfg.optimize.as_ref().map(|o| o.get_ref().clone()).unwrap_or_default();
            let modes = block.modes.unwrap_or(1);
            let opt = optimize_path_with(&sc, modes, &block.path)?;
            if let Some(m) = &opt.search {
                art.write("trace.csv", |w| trace_csv(w, m))?;
            }
            json!({ "betas": opt.betas, "energy": opt.energy, "linear_energy": opt.linear_energy })
        }
        Command::Trotter => {
            let block = cfg.trotter.as_ref().ok_or_else(|| Error::config(None, "missing [trotter]"))?.get_ref();
            let couplings = cfg.lattice().couplings().scaled(block.coupling_scale);
            let probe = target_heisenberg(cfg.lattice())?;
            let psi0 = StateVector::neel_for(&couplings)?;
            let run = run_trotter(&block.plan, &couplings, block.omega, &psi0, Some(&probe))?;
            art.write("trajectory.csv", |w| run.evolution.write_csv(w))?;
            art.write("schedule.txt", |w| run.sequence.write_schedule(w))?;
            let spectrum = Spectrum::new(&probe)?;
            json!({
                "final_energy": run.evolution.final_energy(),
                "device_time": run.device_time,
                "gates": run.sequence.gates.len(),
                "E0": spectrum.ground_energy(),
                "E1": spectrum.first_excited_energy(),
            })
        }
        Command::Compare => {
            let sc = spiral_config(cfg)?;
            let times = sweep_values(cfg)?;
            let opts: CompareOptions = cfg.compare.as_ref().map(|c| c.get_ref().clone()).unwrap_or_default();
            let table = compare_protocols(&sc, &times, &opts)?;
            art.write("compare.csv", |w| table.write_csv(w))?;
            json!({ "coherence_time": table.coherence_time, "E0": table.spiral.e0, "E1": table.spiral.e1 })
        }
        Command::Anneal => {
            let sched = cfg.anneal_schedule()?.ok_or_else(|| Error::config(None, "missing [anneal]"))?;
            let block = cfg.anneal.as_ref().expect("checked above").get_ref();
            let s_star = find_s_star(&sched.table, sched.h).ok();
            let mut problem = AnnealProblem::new(cfg.lattice().clone(), sched)?;
            problem.start = block.start;
            problem.noise = cfg.anneal_noise();
            problem.options = cfg.evolution();
            let outcome = run_reverse_anneal(&problem)?;
            art.write("trajectory.csv", |w| outcome.write_csv(w))?;
            json!({
                "s_star": s_star,
                "initial_energy": outcome.initial_energy,
                "waypoint_energies": outcome.waypoint_energies,
                "min_energy": outcome.min_energy(),
                "final_energy": outcome.final_energy(),
                "return_overlap": outcome.return_overlap,
                "E0": outcome.e0,
                "E1": outcome.e1,
            })
        }
        Command::FloquetCheck => {
            let block = cfg.floquet.as_ref().ok_or_else(|| Error::config(None, "missing [floquet]"))?.get_ref();
            let theta = block.theta.unwrap_or_else(spiral_theta);
            let devs = block
                .omegas
                .iter()
                .map(|&w| floquet_deviation(cfg.lattice(), theta, w))
                .collect::<Result<Vec<f64>>>()?;
            art.write("floquet.csv", |w| {
                let mut out = csv::Writer::from_writer(w);
                out.write_record(["omega", "deviation"])?;
                for (o, d) in block.omegas.iter().zip(&devs) {
                    out.write_record([format!("{o:?}"), format!("{d:?}")])?;
                }
                out.flush()?;
                Ok(())
            })?;
            json!({ "theta": theta, "deviations": devs, "slope": loglog_slope(&block.omegas, &devs).ok() })
        }
        Command::Eigensolve => {
            let levels = cfg.eigensolve.as_ref().map_or(2, |e| e.get_ref().levels);
            let spectrum = Spectrum::new(&target_heisenberg(cfg.lattice())?)?;
            let k = levels.min(spectrum.energies().len());
            json!({
                "energies": &spectrum.energies()[..k],
                "E0": spectrum.ground_energy(),
                "E1": spectrum.first_excited_energy(),
                "ground_degeneracy": spectrum.ground_degeneracy(),
            })
        }
    };
    art.json("summary.json", &summary)?;
    let mut files = art.files.clone();
    files.push("manifest.json".into());
    let manifest = json!({
        "library": "adiaspiral",
        "version": VERSION,
        "command": cfg.command,
        "seed": cfg.seed,
        "files": files,
        "config": cfg.resolved()?,
        "config_toml": cfg.resolved_toml()?,
    });
    art.json("manifest.json", &manifest)?;
    Ok(RunReport {
        command: cfg.command,
        files: art.files,
        summary,
    })
}

/// Reads the configuration back out of a `manifest.json`.
pub fn config_from_manifest(text: &str) -> Result<ExperimentConfig> {
    let v: Value = serde_json::from_str(text)?;
    let toml = v
        .get("config_toml")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::config(None, "manifest has no config_toml entry"))?;
    ExperimentConfig::parse(toml)
}
