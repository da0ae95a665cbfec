//! Rewriting into the {CX, single-qubit} basis.
//!
//! Multi-controlled gates never allocate ancillas. Idle register qubits may be
//! borrowed as dirty ancillas and are always returned to their input state.

use std::f64::consts::PI;

use serde::Serialize;

use super::multiplex::{diagonal, multiplexed_rotation, Axis};
use super::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum McxMethod {
    /// No controls, one control or the 6-CX Toffoli.
    Direct,
    /// `H . diag . H` with a Gray-code phase cascade.
    GrayCode,
    /// Toffoli ladder over `k - 2` borrowed qubits.
    VChain,
    /// Two half-size gates sharing one borrowed qubit.
    Split,
}

fn free_count(k: usize, n: usize) -> usize {
    n.saturating_sub(k + 1)
}

fn gray_cost(k: usize) -> usize {
    (1usize << (k + 1)) - 2
}

fn split_sizes(k: usize) -> (usize, usize) {
    let m1 = k.div_ceil(2);
    (m1, k - m1)
}

fn plan(k: usize, n: usize) -> (usize, McxMethod) {
    match k {
        0 => (0, McxMethod::Direct),
        1 => (1, McxMethod::Direct),
        2 => (6, McxMethod::Direct),
        _ => {
            let free = free_count(k, n);
            let mut best = if k < usize::BITS as usize - 2 {
                (gray_cost(k), McxMethod::GrayCode)
            } else {
                (usize::MAX, McxMethod::GrayCode)
            };
            if free >= k - 2 {
                let c = 24 * (k - 2);
                if c < best.0 {
                    best = (c, McxMethod::VChain);
                }
            }
            if free >= 1 {
                let (m1, m2) = split_sizes(k);
                let c = 2 * plan(m1, n).0 + 2 * plan(m2 + 1, n).0;
                if c < best.0 {
                    best = (c, McxMethod::Split);
                }
            }
            best
        }
    }
}

/// CX count of an MCX with `k` controls on an `n`-qubit register.
pub fn mcx_cx_cost(k: usize, n: usize) -> usize {
    plan(k, n).0
}

pub fn mcx_method(k: usize, n: usize) -> McxMethod {
    plan(k, n).1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct McxCostRow {
    pub controls: usize,
    pub cx: usize,
    pub method: McxMethod,
}

/// MCX cost for every control count that fits in an `n`-qubit register.
pub fn mcx_cost_table(n: usize) -> Vec<McxCostRow> {
    (0..n)
        .map(|k| {
            let (cx, method) = plan(k, n);
            McxCostRow { controls: k, cx, method }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ControlledRotation {
    Multiplexed,
    /// Conjugate a half rotation by an MCX over all controls.
    Full,
    /// Peel off the last control: two singly controlled half rotations and
    /// two MCX over the remaining controls.
    Peel,
}

fn rotation_plan(k: usize, n: usize) -> (usize, ControlledRotation) {
    if k <= 1 {
        return (2 * k, ControlledRotation::Multiplexed);
    }
    let mut best = if k < usize::BITS as usize - 1 {
        (1usize << k, ControlledRotation::Multiplexed)
    } else {
        (usize::MAX, ControlledRotation::Multiplexed)
    };
    let full = 2 * mcx_cx_cost(k, n);
    if full < best.0 {
        best = (full, ControlledRotation::Full);
    }
    let peel = 4 + 2 * mcx_cx_cost(k - 1, n);
    if peel < best.0 {
        best = (peel, ControlledRotation::Peel);
    }
    best
}

pub fn mcry_cx_cost(k: usize, n: usize) -> usize {
    rotation_plan(k, n).0
}

/// Same cost model as [`mcry_cx_cost`]; RZ obeys the same identities.
pub fn mcrz_cx_cost(k: usize, n: usize) -> usize {
    rotation_plan(k, n).0
}

fn controlled_rotation(axis: Axis, controls: &[usize], target: usize, angle: f64, n: usize) -> Vec<Gate> {
    let k = controls.len();
    let rot = |q, a| match axis {
        Axis::Y => Gate::Ry(q, a),
        Axis::Z => Gate::Rz(q, a),
    };
    match rotation_plan(k, n).1 {
        ControlledRotation::Multiplexed => {
            let mut angles = vec![0.0; 1 << k];
            angles[(1 << k) - 1] = angle;
            multiplexed_rotation(axis, controls, target, &angles)
        }
        ControlledRotation::Full => vec![
            rot(target, angle / 2.0),
            Gate::Mcx(controls.to_vec(), target),
            rot(target, -angle / 2.0),
            Gate::Mcx(controls.to_vec(), target),
        ],
        ControlledRotation::Peel => {
            let (last, rest) = controls.split_last().expect("k >= 2");
            let mut out = controlled_rotation(axis, &[*last], target, angle / 2.0, n);
            out.push(Gate::Mcx(rest.to_vec(), target));
            out.extend(controlled_rotation(axis, &[*last], target, -angle / 2.0, n));
            out.push(Gate::Mcx(rest.to_vec(), target));
            out
        }
    }
}

/// Multi-controlled RZ expressed with MCX, CX and single-qubit gates.
pub fn mcrz_gates(controls: &[usize], target: usize, angle: f64, n: usize) -> Vec<Gate> {
    controlled_rotation(Axis::Z, controls, target, angle, n)
}

fn free_qubits(used: &[usize], n: usize) -> Vec<usize> {
    (0..n).filter(|q| !used.contains(q)).collect()
}

fn ccx(c0: usize, c1: usize, t: usize) -> [Gate; 15] {
    let tg = |q| Gate::Phase(q, PI / 4.0);
    let tdg = |q| Gate::Phase(q, -PI / 4.0);
    [
        Gate::H(t),
        Gate::Cx(c1, t),
        tdg(t),
        Gate::Cx(c0, t),
        tg(t),
        Gate::Cx(c1, t),
        tdg(t),
        Gate::Cx(c0, t),
        tg(c1),
        tg(t),
        Gate::H(t),
        Gate::Cx(c0, c1),
        tg(c0),
        tdg(c1),
        Gate::Cx(c0, c1),
    ]
}

fn mcx_gates(controls: &[usize], target: usize, n: usize) -> Vec<Gate> {
    let k = controls.len();
    match plan(k, n).1 {
        McxMethod::Direct => match k {
            0 => vec![Gate::X(target)],
            1 => vec![Gate::Cx(controls[0], target)],
            _ => vec![Gate::Ccx(controls[0], controls[1], target)],
        },
        McxMethod::GrayCode => {
            let mut qs = controls.to_vec();
            qs.push(target);
            let mut phases = vec![0.0; 1 << qs.len()];
            *phases.last_mut().expect("nonempty") = PI;
            let mut out = vec![Gate::H(target)];
            out.extend(diagonal(&qs, &phases));
            out.push(Gate::H(target));
            out
        }
        McxMethod::VChain => {
            let mut used = controls.to_vec();
            used.push(target);
            let a = free_qubits(&used, n);
            let c = controls;
            let mut down = Vec::new();
            for j in (2..k).rev() {
                let tgt = if j == k - 1 { target } else { a[j - 1] };
                down.push(Gate::Ccx(c[j], a[j - 2], tgt));
            }
            let mut out = down.clone();
            out.push(Gate::Ccx(c[0], c[1], a[0]));
            out.extend(down.iter().rev().cloned());
            // Second pass restores the borrowed qubits.
            let inner = &down[1..];
            out.extend(inner.iter().cloned());
            out.push(Gate::Ccx(c[0], c[1], a[0]));
            out.extend(inner.iter().rev().cloned());
            out
        }
        McxMethod::Split => {
            let mut used = controls.to_vec();
            used.push(target);
            let a = free_qubits(&used, n)[0];
            let (m1, _) = split_sizes(k);
            let g1 = controls[..m1].to_vec();
            let mut g2 = controls[m1..].to_vec();
            g2.push(a);
            vec![
                Gate::Mcx(g1.clone(), a),
                Gate::Mcx(g2.clone(), target),
                Gate::Mcx(g1, a),
                Gate::Mcx(g2, target),
            ]
        }
    }
}

fn expand(g: &Gate, n: usize, out: &mut Vec<Gate>) {
    let sub: Vec<Gate> = match g {
        g if g.is_basis() => {
            out.push(g.clone());
            return;
        }
        Gate::Swap(a, b) => vec![Gate::Cx(*a, *b), Gate::Cx(*b, *a), Gate::Cx(*a, *b)],
        Gate::CPhase(c, t, th) => vec![
            Gate::Phase(*c, th / 2.0),
            Gate::Cx(*c, *t),
            Gate::Phase(*t, -th / 2.0),
            Gate::Cx(*c, *t),
            Gate::Phase(*t, th / 2.0),
        ],
        Gate::Ccx(a, b, t) => ccx(*a, *b, *t).to_vec(),
        Gate::Mcx(cs, t) => mcx_gates(cs, *t, n),
        Gate::Mcry(cs, t, th) => controlled_rotation(Axis::Y, cs, *t, *th, n),
        _ => unreachable!("basis gates handled above"),
    };
    for s in &sub {
        expand(s, n, out);
    }
}

/// Rewrites every gate into CX and single-qubit gates, exactly up to a global
/// phase.
pub fn decompose(c: &Circuit) -> Circuit {
    let mut out = Vec::with_capacity(c.len());
    for g in c.gates() {
        expand(g, c.n(), &mut out);
    }
    Circuit { n: c.n(), gates: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx_of(gates: &[Gate], n: usize) -> usize {
        let c = Circuit::from_gates(n, gates.to_vec()).unwrap();
        decompose(&c).gates().iter().filter(|g| matches!(g, Gate::Cx(..))).count()
    }

    #[test]
    fn costs_match_emission() {
        for n in 2..=12 {
            for k in 0..n {
                let cs: Vec<usize> = (0..k).collect();
                assert_eq!(cx_of(&[Gate::Mcx(cs.clone(), k)], n), mcx_cx_cost(k, n), "mcx k={k} n={n}");
                assert_eq!(cx_of(&[Gate::Mcry(cs.clone(), k, 0.3)], n), mcry_cx_cost(k, n), "mcry k={k} n={n}");
                let rz = mcrz_gates(&cs, k, 0.3, n);
                assert_eq!(cx_of(&rz, n), mcrz_cx_cost(k, n), "mcrz k={k} n={n}");
            }
        }
    }

    #[test]
    fn small_mcx_costs() {
        assert_eq!(mcx_cx_cost(2, 3), 6);
        assert_eq!(mcx_cx_cost(3, 4), 14);
        assert_eq!(mcx_cx_cost(4, 5), 30);
        // Borrowed qubits keep large gates linear.
        assert!(mcx_cx_cost(14, 16) < 1000);
    }

    #[test]
    fn table_lists_every_k() {
        let t = mcx_cost_table(6);
        assert_eq!(t.len(), 6);
        assert_eq!(t[2].cx, 6);
        assert_eq!(t[5].method, McxMethod::GrayCode);
    }
}
