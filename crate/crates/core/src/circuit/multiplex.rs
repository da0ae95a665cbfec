//! Uniformly controlled rotations and diagonal phase operators.

use super::Gate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Y,
    Z,
}

fn rotation(axis: Axis, q: usize, angle: f64) -> Gate {
    match axis {
        Axis::Y => Gate::Ry(q, angle),
        Axis::Z => Gate::Rz(q, angle),
    }
}

/// In-place unnormalized Walsh-Hadamard transform.
pub(crate) fn walsh_hadamard(v: &mut [f64]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Applies rotation `angles[c]` to `target` when the controls read `c`
/// (bit `i` of `c` is `controls[i]`). Emits exactly `2^k` CX for `k >= 1`
/// controls, with no angle elision.
pub fn multiplexed_rotation(axis: Axis, controls: &[usize], target: usize, angles: &[f64]) -> Vec<Gate> {
    let k = controls.len();
    assert_eq!(angles.len(), 1 << k, "multiplexor needs 2^k angles");
    if k == 0 {
        return vec![rotation(axis, target, angles[0])];
    }
    let mut w = angles.to_vec();
    walsh_hadamard(&mut w);
    let scale = 1.0 / (1u64 << k) as f64;
    let m = 1usize << k;
    let mut out = Vec::with_capacity(2 * m);
    for i in 0..m {
        let gray = i ^ (i >> 1);
        out.push(rotation(axis, target, w[gray] * scale));
        let flip = if i + 1 < m { (i + 1).trailing_zeros() as usize } else { k - 1 };
        out.push(Gate::Cx(controls[flip], target));
    }
    out
}

/// Diagonal operator `|x> -> e^{i phases[x]} |x>` up to global phase, where
/// bit `i` of `x` is `qubits[i]`. Costs `2^m - 2` CX on `m` qubits.
pub fn diagonal(qubits: &[usize], phases: &[f64]) -> Vec<Gate> {
    assert_eq!(phases.len(), 1 << qubits.len(), "diagonal needs 2^m phases");
    let mut out = Vec::new();
    let mut phi = phases.to_vec();
    for m in (1..=qubits.len()).rev() {
        let half = 1 << (m - 1);
        let top = qubits[m - 1];
        let mut theta = Vec::with_capacity(half);
        let mut mean = Vec::with_capacity(half);
        for x in 0..half {
            theta.push(phi[x + half] - phi[x]);
            mean.push(0.5 * (phi[x] + phi[x + half]));
        }
        out.extend(multiplexed_rotation(Axis::Z, &qubits[..m - 1], top, &theta));
        phi = mean;
    }
    out
}
