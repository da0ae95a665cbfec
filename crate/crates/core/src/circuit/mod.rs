//! Circuit representation, decomposition, costing and text formats.

mod decompose;
mod format;
pub mod multiplex;
mod resources;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use decompose::{
    decompose, mcrz_cx_cost, mcrz_gates, mcry_cx_cost, mcx_cost_table, mcx_cx_cost, mcx_method,
    McxCostRow, McxMethod,
};
pub use format::{export, from_listing, from_qasm, import, to_listing, to_qasm, TextFormat};
pub use resources::{count, count_stages, depth, ResourceReport, StageCost};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Rx,
    Ry,
    Rz,
    Phase,
    Cx,
    CPhase,
    Swap,
    Ccx,
    Mcx,
    Mcry,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Phase => "PHASE",
            GateKind::Cx => "CX",
            GateKind::CPhase => "CPHASE",
            GateKind::Swap => "SWAP",
            GateKind::Ccx => "CCX",
            GateKind::Mcx => "MCX",
            GateKind::Mcry => "MCRY",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate. Operand order is controls first, then the target(s).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    X(usize),
    Rx(usize, f64),
    Ry(usize, f64),
    Rz(usize, f64),
    /// diag(1, e^{i angle})
    Phase(usize, f64),
    Cx(usize, usize),
    CPhase(usize, usize, f64),
    Swap(usize, usize),
    Ccx(usize, usize, usize),
    Mcx(Vec<usize>, usize),
    Mcry(Vec<usize>, usize, f64),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Rx(..) => GateKind::Rx,
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Phase(..) => GateKind::Phase,
            Gate::Cx(..) => GateKind::Cx,
            Gate::CPhase(..) => GateKind::CPhase,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Ccx(..) => GateKind::Ccx,
            Gate::Mcx(..) => GateKind::Mcx,
            Gate::Mcry(..) => GateKind::Mcry,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H(q) | Gate::X(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::Phase(q, _) => {
                vec![*q]
            }
            Gate::Cx(a, b) | Gate::CPhase(a, b, _) | Gate::Swap(a, b) => vec![*a, *b],
            Gate::Ccx(a, b, c) => vec![*a, *b, *c],
            Gate::Mcx(cs, t) | Gate::Mcry(cs, t, _) => {
                let mut v = cs.clone();
                v.push(*t);
                v
            }
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Gate::Rx(_, a) | Gate::Ry(_, a) | Gate::Rz(_, a) | Gate::Phase(_, a) | Gate::CPhase(_, _, a) | Gate::Mcry(_, _, a) => {
                Some(*a)
            }
            _ => None,
        }
    }

    /// Builds a gate from its kind, operand list and optional angle.
    pub fn from_parts(kind: GateKind, qubits: &[usize], angle: Option<f64>) -> Result<Gate> {
        let arity = |k: usize| -> Result<()> {
            if qubits.len() != k {
                return Err(Error::InvalidGate(format!("{kind} takes {k} qubits, got {}", qubits.len())));
            }
            Ok(())
        };
        let theta = || angle.ok_or_else(|| Error::InvalidGate(format!("{kind} needs an angle")));
        let no_angle = || -> Result<()> {
            if angle.is_some() {
                return Err(Error::InvalidGate(format!("{kind} takes no angle")));
            }
            Ok(())
        };
        Ok(match kind {
            GateKind::H => { arity(1)?; no_angle()?; Gate::H(qubits[0]) }
            GateKind::X => { arity(1)?; no_angle()?; Gate::X(qubits[0]) }
            GateKind::Rx => { arity(1)?; Gate::Rx(qubits[0], theta()?) }
            GateKind::Ry => { arity(1)?; Gate::Ry(qubits[0], theta()?) }
            GateKind::Rz => { arity(1)?; Gate::Rz(qubits[0], theta()?) }
            GateKind::Phase => { arity(1)?; Gate::Phase(qubits[0], theta()?) }
            GateKind::Cx => { arity(2)?; no_angle()?; Gate::Cx(qubits[0], qubits[1]) }
            GateKind::CPhase => { arity(2)?; Gate::CPhase(qubits[0], qubits[1], theta()?) }
            GateKind::Swap => { arity(2)?; no_angle()?; Gate::Swap(qubits[0], qubits[1]) }
            GateKind::Ccx => { arity(3)?; no_angle()?; Gate::Ccx(qubits[0], qubits[1], qubits[2]) }
            GateKind::Mcx => {
                no_angle()?;
                let (t, cs) = qubits.split_last().ok_or_else(|| Error::InvalidGate("MCX without target".into()))?;
                Gate::Mcx(cs.to_vec(), *t)
            }
            GateKind::Mcry => {
                let (t, cs) = qubits.split_last().ok_or_else(|| Error::InvalidGate("MCRY without target".into()))?;
                Gate::Mcry(cs.to_vec(), *t, theta()?)
            }
        })
    }

    pub fn inverse(&self) -> Gate {
        match self {
            Gate::Rx(q, a) => Gate::Rx(*q, -a),
            Gate::Ry(q, a) => Gate::Ry(*q, -a),
            Gate::Rz(q, a) => Gate::Rz(*q, -a),
            Gate::Phase(q, a) => Gate::Phase(*q, -a),
            Gate::CPhase(c, t, a) => Gate::CPhase(*c, *t, -a),
            Gate::Mcry(cs, t, a) => Gate::Mcry(cs.clone(), *t, -a),
            g => g.clone(),
        }
    }

    pub fn is_single_qubit(&self) -> bool {
        matches!(
            self,
            Gate::H(_) | Gate::X(_) | Gate::Rx(..) | Gate::Ry(..) | Gate::Rz(..) | Gate::Phase(..)
        )
    }

    /// CX or a single-qubit gate.
    pub fn is_basis(&self) -> bool {
        self.is_single_qubit() || matches!(self, Gate::Cx(..))
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= n {
                return Err(Error::InvalidGate(format!("{} operand {q} outside register of {n}", self.kind())));
            }
            if qs[..i].contains(&q) {
                return Err(Error::InvalidGate(format!("{} repeats qubit {q}", self.kind())));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::InvalidGate(format!("{} has non-finite angle", self.kind())));
            }
        }
        Ok(())
    }
}

/// An `n`-qubit gate sequence.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Circuit { n, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends `other`, which must not be wider than `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.n > self.n {
            return Err(Error::InvalidGate(format!(
                "cannot append a {}-qubit circuit to a {}-qubit one",
                other.n, self.n
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Same gates on a register of `n` qubits.
    pub fn widen(&self, n: usize) -> Result<Circuit> {
        Circuit::from_gates(n, self.gates.clone())
    }

    pub fn inverse(&self) -> Circuit {
        Circuit { n: self.n, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    pub fn is_basis(&self) -> bool {
        self.gates.iter().all(Gate::is_basis)
    }

    /// Highest qubit index touched, if any gate is present.
    pub fn max_qubit(&self) -> Option<usize> {
        self.gates.iter().flat_map(|g| g.qubits()).max()
    }
}
