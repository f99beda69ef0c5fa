// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! `adiaspiral --config experiment.toml --out results/`
//!
//! Exit status: 0 on success, 2 for configuration or validation errors, 3
//! when a numerical method fails to converge, 1 for anything else (I/O).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adiaspiral::{config_from_manifest, run_experiment, Error, ExperimentConfig};
use anyhow::Context;
use clap::Parser;

#[derive(Parser, Debug)]
#[command(name = "adiaspiral", version, about = "Run one adiabatic-spiral experiment from a config file")]
struct Args {
    /// Experiment TOML, or a manifest.json from an earlier run.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory; created if missing.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, value_name = "N")]
    workers: Option<usize>,
    #[arg(long)]
    verbose: bool,
}

fn load(path: &Path) -> Result<ExperimentConfig, Error> {
    if path.extension().is_some_and(|e| e == "json") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config { line: None, message: format!("cannot read {}: {e}", path.display()) })?;
        config_from_manifest(&text)
    } else {
        ExperimentConfig::load(path)
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_numerical() => 3,
        Some(e) if e.is_validation() => 2,
        _ => 1,
    }
}

fn run(args: &Args) -> anyhow::Result<()> {
    let cfg = load(&args.config)?;
    if let Some(n) = args.workers {
        if n == 0 {
            return Err(Error::InvalidArgument("--workers must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot size the worker pool")?;
    }
    if args.verbose {
        eprintln!(
            "adiaspiral {}: {} on {} sites -> {}",
            adiaspiral::experiment::VERSION,
            cfg.command.name(),
            cfg.lattice().nsites(),
            args.out.display()
        );
    }
    let report = run_experiment(&cfg, &args.out)?;
    if args.verbose {
        for f in &report.files {
            eprintln!("  wrote {}", args.out.join(f).display());
        }
        eprintln!("{}", serde_json::to_string_pretty(&report.summary)?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
