// Copyright 2026 The adiaspiral Authors
// SPDX-License-Identifier: Apache-2.0

//! Global analog gates of an always-on Ising device and their sequences.

use std::f64::consts::PI;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::dense::{expm_hermitian, to_dense, CMatrix};
use crate::engine::expm::evolve_compiled;
use crate::engine::operator::CompiledOperator;
use crate::engine::state::StateVector;
use crate::error::{Error, Result};
use crate::model::lattice::Couplings;
use crate::model::pauli::{Axis, PauliString, PauliSum, TermAccumulator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    #[serde(rename = "RX+")]
    RxPlus,
    #[serde(rename = "RX-")]
    RxMinus,
    #[serde(rename = "RY+")]
    RyPlus,
    #[serde(rename = "RY-")]
    RyMinus,
    #[serde(rename = "RZ")]
    Rz,
}

impl GateKind {
    /// Rotation axis and sign of a π/2 pulse.
    pub fn pulse_axis(self) -> Option<(Axis, f64)> {
        match self {
            GateKind::RxPlus => Some((Axis::X, 1.0)),
            GateKind::RxMinus => Some((Axis::X, -1.0)),
            GateKind::RyPlus => Some((Axis::Y, 1.0)),
            GateKind::RyMinus => Some((Axis::Y, -1.0)),
            GateKind::Rz => None,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::RxPlus => "RX+",
            GateKind::RxMinus => "RX-",
            GateKind::RyPlus => "RY+",
            GateKind::RyMinus => "RY-",
            GateKind::Rz => "RZ",
        })
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "RX+" => GateKind::RxPlus,
            "RX-" => GateKind::RxMinus,
            "RY+" => GateKind::RyPlus,
            "RY-" => GateKind::RyMinus,
            "RZ" => GateKind::Rz,
            other => return Err(Error::InvalidArgument(format!("unknown gate {other:?}"))),
        })
    }
}

/// One gate. Pulses rotate every spin by `±π/2` while the Ising
/// interaction stays on for `duration`; `RZ(t, κ)` lets the interaction and a
/// staggered field act for time `t`:
///
/// `R±_X = exp(−i·dur·Σ J ZZ ∓ i(π/4)Σ X)`, likewise for `Y`,
/// `R_Z(t, κ) = exp(−i t Σ J ZZ − i(κ/2) Σ s_j Z_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalogGate {
    pub kind: GateKind,
    pub duration: f64,
    #[serde(default)]
    pub kappa: f64,
}

impl AnalogGate {
    pub fn pulse(kind: GateKind, eps: f64) -> Self {
        debug_assert!(kind != GateKind::Rz);
        Self {
            kind,
            duration: eps,
            kappa: 0.0,
        }
    }

    pub fn rx_plus(eps: f64) -> Self {
        Self::pulse(GateKind::RxPlus, eps)
    }

    pub fn rx_minus(eps: f64) -> Self {
        Self::pulse(GateKind::RxMinus, eps)
    }

    pub fn ry_plus(eps: f64) -> Self {
        Self::pulse(GateKind::RyPlus, eps)
    }

    pub fn ry_minus(eps: f64) -> Self {
        Self::pulse(GateKind::RyMinus, eps)
    }

    pub fn rz(t: f64, kappa: f64) -> Self {
        Self {
            kind: GateKind::Rz,
            duration: t,
            kappa,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return Err(Error::InvalidArgument(format!("{} duration {}", self.kind, self.duration)));
        }
        if !self.kappa.is_finite() {
            return Err(Error::InvalidArgument(format!("{} kappa {}", self.kind, self.kappa)));
        }
        if self.kind != GateKind::Rz && self.kappa != 0.0 {
            return Err(Error::InvalidArgument(format!("{} takes no kappa", self.kind)));
        }
        Ok(())
    }

    /// The part of the exponent that survives at `J = 0`.
    pub fn ideal_generator(&self, couplings: &Couplings) -> PauliSum {
        let n = couplings.nsites();
        let mut acc = TermAccumulator::new(n);
        match self.kind.pulse_axis() {
            Some((axis, sign)) => {
                for j in 0..n {
                    acc.add(sign * PI / 4.0, PauliString::single(j, axis));
                }
            }
            None => {
                for (j, s) in couplings.stagger().iter().enumerate() {
                    acc.add(0.5 * self.kappa * s, PauliString::single(j, Axis::Z));
                }
            }
        }
        acc.finish()
    }

    /// `duration · Σ J_ij Z_iZ_j`.
    pub fn interaction_generator(&self, couplings: &Couplings) -> PauliSum {
        let mut acc = TermAccumulator::new(couplings.nsites());
        for b in couplings.bonds() {
            acc.add(self.duration * b.strength, PauliString::pair(b.i, Axis::Z, b.j, Axis::Z));
        }
        acc.finish()
    }

    /// `G` with gate `= exp(−iG)`.
    pub fn generator(&self, couplings: &Couplings) -> PauliSum {
        &self.interaction_generator(couplings) + &self.ideal_generator(couplings)
    }
}

/// Applies one gate exactly.
pub fn apply_analog_gate(g: &AnalogGate, couplings: &Couplings, psi: &StateVector) -> Result<StateVector> {
    g.validate()?;
    if psi.nsites() != couplings.nsites() {
        return Err(Error::DimensionMismatch {
            expected: couplings.nsites(),
            actual: psi.nsites(),
        });
    }
    evolve_compiled(&CompiledOperator::new(&g.generator(couplings))?, 1.0, psi)
}

/// Gates in the order they are applied (the first entry acts first).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseSequence {
    pub gates: Vec<AnalogGate>,
    pub couplings: Couplings,
    /// Drive amplitude of the π/2 pulses; each lasts exactly `π/(2Ω)`.
    pub omega: f64,
}

/// Length of a π/2 pulse at drive amplitude `omega`.
pub fn pulse_time(omega: f64) -> f64 {
    PI / (2.0 * omega)
}

impl PulseSequence {
    pub fn new(gates: Vec<AnalogGate>, couplings: Couplings, omega: f64) -> Result<Self> {
        let s = Self {
            gates,
            couplings,
            omega,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("Ω = {}", self.omega)));
        }
        let eps = pulse_time(self.omega);
        for g in &self.gates {
            g.validate()?;
            if g.kind != GateKind::Rz && (g.duration - eps).abs() > 1e-12 * eps {
                return Err(Error::InvalidArgument(format!(
                    "{} lasts {} but π/(2Ω) = {eps}",
                    g.kind, g.duration
                )));
            }
        }
        Ok(())
    }

    pub fn epsilon(&self) -> f64 {
        pulse_time(self.omega)
    }

    /// Total device time `Θ = Σ durations`.
    pub fn device_time(&self) -> f64 {
        self.gates.iter().map(|g| g.duration).sum()
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        self.gates
            .iter()
            .try_fold(psi.clone(), |s, g| apply_analog_gate(g, &self.couplings, &s))
    }

    /// Dense unitary of the whole word.
    pub fn unitary(&self) -> Result<CMatrix> {
        self.product(|g| g.generator(&self.couplings))
    }

    /// Dense unitary with the interaction switched off during every gate.
    pub fn ideal_unitary(&self) -> Result<CMatrix> {
        self.product(|g| g.ideal_generator(&self.couplings))
    }

    fn product(&self, generator: impl Fn(&AnalogGate) -> PauliSum) -> Result<CMatrix> {
        let dim = 1usize << self.couplings.nsites();
        let mut u = CMatrix::identity(dim, dim);
        for g in &self.gates {
            u = expm_hermitian(&to_dense(&generator(g))?, 1.0) * u;
        }
        Ok(u)
    }

    /// Human-readable schedule: one `kind duration kappa` line per gate.
    pub fn write_schedule<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# analog pulse schedule, first line acts first")?;
        writeln!(w, "# omega {:?}", self.omega)?;
        writeln!(w, "# device_time {:?}", self.device_time())?;
        writeln!(w, "# kind duration kappa")?;
        for g in &self.gates {
            writeln!(w, "{} {:?} {:?}", g.kind, g.duration, g.kappa)?;
        }
        Ok(())
    }

    /// Reads the gate lines written by [`PulseSequence::write_schedule`].
    pub fn read_gates<R: BufRead>(r: R) -> Result<Vec<AnalogGate>> {
        let mut gates = Vec::new();
        for (k, line) in r.lines().enumerate() {
            let line = line?;
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::config(Some(k + 1), format!("{what} in {body:?}"));
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(bad("expected `kind duration kappa`"));
            }
            let kind: GateKind = fields[0].parse().map_err(|_| bad("unknown gate"))?;
            let duration: f64 = fields[1].parse().map_err(|_| bad("bad duration"))?;
            let kappa: f64 = fields[2].parse().map_err(|_| bad("bad kappa"))?;
            let g = AnalogGate { kind, duration, kappa };
            g.validate().map_err(|e| bad(&e.to_string()))?;
            gates.push(g);
        }
        Ok(gates)
    }
}
