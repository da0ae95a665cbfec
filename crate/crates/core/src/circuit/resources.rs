//! CX counting and ASAP depth.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{decompose, Circuit, Gate};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCost {
    pub cnot: usize,
    pub single: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub cnot_count: usize,
    pub single_qubit_count: usize,
    pub depth: usize,
    pub stage_breakdown: BTreeMap<String, StageCost>,
}

impl ResourceReport {
    pub fn totals(&self) -> StageCost {
        StageCost { cnot: self.cnot_count, single: self.single_qubit_count, depth: self.depth }
    }
}

/// ASAP depth, one layer per gate.
pub fn depth(c: &Circuit) -> usize {
    let mut busy = vec![0usize; c.n()];
    let mut total = 0;
    for g in c.gates() {
        let qs = g.qubits();
        let layer = 1 + qs.iter().map(|&q| busy[q]).max().unwrap_or(0);
        for q in qs {
            busy[q] = layer;
        }
        total = total.max(layer);
    }
    total
}

fn tally(basis: &Circuit) -> StageCost {
    let cnot = basis.gates().iter().filter(|g| matches!(g, Gate::Cx(..))).count();
    StageCost { cnot, single: basis.len() - cnot, depth: depth(basis) }
}

/// Counts after decomposition into the CX + single-qubit basis.
pub fn count(c: &Circuit) -> ResourceReport {
    let t = tally(&decompose(c));
    ResourceReport {
        cnot_count: t.cnot,
        single_qubit_count: t.single,
        depth: t.depth,
        stage_breakdown: BTreeMap::new(),
    }
}

/// Report for stages run back to back; the total depth is that of the
/// concatenated circuit.
pub fn count_stages(stages: &[(&str, &Circuit)]) -> ResourceReport {
    let n = stages.iter().map(|(_, c)| c.n()).max().unwrap_or(0);
    let mut all = Circuit::new(n);
    let mut breakdown = BTreeMap::new();
    for (label, c) in stages {
        let basis = decompose(c);
        breakdown.insert((*label).to_string(), tally(&basis));
        all.gates.extend(basis.gates);
    }
    let t = tally(&all);
    ResourceReport {
        cnot_count: t.cnot,
        single_qubit_count: t.single,
        depth: t.depth,
        stage_breakdown: breakdown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_examples() {
        let c = Circuit::from_gates(3, vec![Gate::H(0), Gate::Cx(0, 1), Gate::H(2)]).unwrap();
        assert_eq!(depth(&c), 2);
        let chain = Circuit::from_gates(1, vec![Gate::H(0); 7]).unwrap();
        assert_eq!(depth(&chain), 7);
        let layer = Circuit::from_gates(5, (0..5).map(Gate::X).collect()).unwrap();
        assert_eq!(depth(&layer), 1);
    }

    #[test]
    fn empty_report() {
        let r = count(&Circuit::new(4));
        assert_eq!((r.cnot_count, r.single_qubit_count, r.depth), (0, 0, 0));
    }

    #[test]
    fn toffoli_and_swap() {
        let r = count(&Circuit::from_gates(3, vec![Gate::Ccx(0, 1, 2)]).unwrap());
        assert_eq!((r.cnot_count, r.single_qubit_count), (6, 9));
        let r = count(&Circuit::from_gates(2, vec![Gate::Swap(0, 1)]).unwrap());
        assert_eq!((r.cnot_count, r.single_qubit_count), (3, 0));
        let r = count(&Circuit::from_gates(2, vec![Gate::CPhase(0, 1, 0.7)]).unwrap());
        assert_eq!((r.cnot_count, r.single_qubit_count), (2, 3));
    }

    #[test]
    fn stages_sum() {
        let a = Circuit::from_gates(2, vec![Gate::H(0), Gate::Cx(0, 1)]).unwrap();
        let b = Circuit::from_gates(2, vec![Gate::Swap(0, 1)]).unwrap();
        let r = count_stages(&[("a", &a), ("b", &b)]);
        assert_eq!(r.cnot_count, 4);
        assert_eq!(r.stage_breakdown["a"].cnot + r.stage_breakdown["b"].cnot, 4);
        assert_eq!(r.depth, 5);
    }
}
