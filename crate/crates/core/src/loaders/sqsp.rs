//! Sparse state preparation.
//!
//! Two constructions are available and [`SqspStrategy::Auto`] keeps the one
//! with fewer CX after decomposition.
//!
//! *Compact* relabels the support with X, CX and multi-controlled X gates
//! until it fits on as few qubits as the saving allows, loads those qubits
//! densely and undoes the relabelling.
//!
//! *Merge* repeatedly picks two support strings, aligns them with CX so they
//! differ in one bit, isolates them from the rest with controls and folds one
//! amplitude into the other with a controlled RY (plus a controlled RZ for
//! complex data). The circuit is the inverse of that sequence.

use std::cmp::Reverse;
use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{dense_gates, SparseState};
use crate::circuit::{count, mcrz_cx_cost, mcrz_gates, mcry_cx_cost, mcx_cx_cost, Circuit, Gate};

/// Above this support size `Auto` skips the merge construction.
const MERGE_AUTO_LIMIT: usize = 4096;
/// Relocation masks of weight two are only tried up to this support size.
const PAIR_SEARCH_LIMIT: usize = 2048;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqspStrategy {
    #[default]
    Auto,
    Compact,
    Merge,
}

impl std::str::FromStr for SqspStrategy {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(SqspStrategy::Auto),
            "compact" => Ok(SqspStrategy::Compact),
            "merge" => Ok(SqspStrategy::Merge),
            other => Err(crate::Error::InvalidArgument(format!("unknown sqsp strategy {other:?}"))),
        }
    }
}

pub fn sqsp(s: &SparseState) -> Circuit {
    sqsp_with(s, SqspStrategy::Auto)
}

pub fn sqsp_with(s: &SparseState, strategy: SqspStrategy) -> Circuit {
    match strategy {
        SqspStrategy::Compact => compact(s),
        SqspStrategy::Merge => merge(s),
        SqspStrategy::Auto => {
            let a = compact(s);
            if s.d() > MERGE_AUTO_LIMIT {
                return a;
            }
            let b = merge(s);
            if count(&b).cnot_count < count(&a).cnot_count {
                b
            } else {
                a
            }
        }
    }
}

/// Worst-case CX spent by one merge step on `n` qubits.
pub fn sqsp_per_entry_bound(n: usize) -> usize {
    let worst = (0..n.max(1)).map(|k| mcry_cx_cost(k, n) + mcrz_cx_cost(k, n)).max().unwrap_or(0);
    n.saturating_sub(1) + worst
}

/// CX bound for a `d`-sparse state on `n` qubits.
pub fn sqsp_cx_bound(n: usize, d: usize) -> usize {
    d.saturating_sub(1) * sqsp_per_entry_bound(n)
}

fn bits(x: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| x >> b & 1 == 1)
}

fn bit(x: u64, b: usize) -> bool {
    x >> b & 1 == 1
}

fn ceil_log2(d: usize) -> usize {
    d.next_power_of_two().trailing_zeros() as usize
}

fn controlled_x(lits: &[usize], target: usize) -> Gate {
    match lits {
        [] => Gate::X(target),
        [c] => Gate::Cx(*c, target),
        [a, b] => Gate::Ccx(*a, *b, target),
        _ => Gate::Mcx(lits.to_vec(), target),
    }
}

/// Product term: points `p` with `p & care == value`.
#[derive(Clone, Copy, Debug)]
struct Cube {
    care: u64,
    value: u64,
}

struct Collapse {
    bit: usize,
    relocate: Vec<usize>,
    cubes: Vec<Cube>,
}

/// Calls `f` on every point of the cube spanned by `vars`.
fn for_each_point(cube: Cube, vars: u64, mut f: impl FnMut(u64) -> bool) -> bool {
    let free = vars & !cube.care;
    let mut sub = 0u64;
    loop {
        if !f(cube.value | sub) {
            return false;
        }
        if sub == free {
            return true;
        }
        sub = (sub.wrapping_sub(free)) & free;
    }
}

fn cube_hits(cube: Cube, vars: u64, set: &HashSet<u64>) -> bool {
    let size = 1u128 << (vars & !cube.care).count_ones();
    if size <= set.len() as u128 {
        !for_each_point(cube, vars, |p| !set.contains(&p))
    } else {
        set.iter().any(|&p| p & cube.care == cube.value)
    }
}

/// Disjoint cube cover of `on` avoiding `off`, with CX cost below `limit`.
fn cube_cover(on: &[u64], off: &HashSet<u64>, vars: &[usize], n: usize, limit: usize) -> Option<(Vec<Cube>, usize)> {
    let var_mask = vars.iter().fold(0u64, |m, &v| m | 1 << v);
    let on_set: HashSet<u64> = on.iter().copied().collect();
    let mut covered: HashSet<u64> = HashSet::new();
    let mut cubes = Vec::new();
    let mut cost = 0;
    let mut order = on.to_vec();
    order.sort_unstable();
    for &seed in &order {
        if covered.contains(&seed) {
            continue;
        }
        let mut cube = Cube { care: var_mask, value: seed };
        for &v in vars {
            let trial = Cube { care: cube.care & !(1 << v), value: cube.value & !(1 << v) };
            if !cube_hits(trial, var_mask, off) && !cube_hits(trial, var_mask, &covered) {
                cube = trial;
            }
        }
        cost += mcx_cx_cost(cube.care.count_ones() as usize, n);
        if cost >= limit {
            return None;
        }
        let size = 1u128 << (var_mask & !cube.care).count_ones();
        if size <= on.len() as u128 {
            for_each_point(cube, var_mask, |p| {
                if on_set.contains(&p) {
                    covered.insert(p);
                }
                true
            });
        } else {
            covered.extend(on.iter().copied().filter(|p| p & cube.care == cube.value));
        }
        cubes.push(cube);
    }
    Some((cubes, cost))
}

fn best_collapse(strings: &[u64], live: &[usize], n: usize, saving: usize) -> Option<Collapse> {
    let mut best: Option<Collapse> = None;
    let mut budget = saving;
    for &b in live {
        let others: Vec<usize> = live.iter().copied().filter(|&q| q != b).collect();
        let mut deltas: Vec<Vec<usize>> = vec![vec![]];
        deltas.extend(others.iter().map(|&j| vec![j]));
        if strings.len() <= PAIR_SEARCH_LIMIT {
            for (i, &j) in others.iter().enumerate() {
                deltas.extend(others[i + 1..].iter().map(|&k| vec![j, k]));
            }
        }
        for delta in deltas {
            if delta.len() >= budget {
                continue;
            }
            let dmask = delta.iter().fold(0u64, |m, &j| m | 1 << j);
            let mut on = Vec::new();
            let mut off = HashSet::new();
            for &x in strings {
                if bit(x, b) {
                    on.push((x ^ dmask) & !(1 << b));
                } else {
                    off.insert(x);
                }
            }
            if on.is_empty() {
                return Some(Collapse { bit: b, relocate: vec![], cubes: vec![] });
            }
            if on.iter().any(|p| off.contains(p)) {
                continue;
            }
            if let Some((cubes, cost)) = cube_cover(&on, &off, &others, n, budget - delta.len()) {
                budget = cost + delta.len();
                best = Some(Collapse { bit: b, relocate: delta, cubes });
            }
        }
    }
    best
}

fn compact(s: &SparseState) -> Circuit {
    let n = s.n();
    let mut strings: Vec<u64> = s.entries().iter().map(|e| e.0).collect();
    let amps: Vec<Complex64> = s.entries().iter().map(|e| e.1).collect();
    let factor = if s.is_real() { 1 } else { 2 };
    let mut relabel = Vec::new();

    let s0 = strings[0];
    relabel.extend(bits(s0).map(Gate::X));
    for x in &mut strings {
        *x ^= s0;
    }

    let mut live_mask = 0u64;
    for idx in 0..strings.len() {
        let v = strings[idx];
        let outside = v & !live_mask;
        if outside == 0 {
            continue;
        }
        let p = 63 - outside.leading_zeros() as usize;
        for j in bits(v).filter(|&j| j != p) {
            relabel.push(Gate::Cx(p, j));
            for x in &mut strings {
                if bit(*x, p) {
                    *x ^= 1 << j;
                }
            }
        }
        live_mask |= 1 << p;
    }

    let mut live: Vec<usize> = bits(live_mask).collect();
    let min_bits = ceil_log2(strings.len());
    while live.len() > min_bits {
        let saving = factor * (1usize << (live.len() - 1));
        let Some(c) = best_collapse(&strings, &live, n, saving) else { break };
        for &j in &c.relocate {
            relabel.push(Gate::Cx(c.bit, j));
        }
        let dmask = c.relocate.iter().fold(0u64, |m, &j| m | 1 << j);
        for cube in &c.cubes {
            let lits: Vec<usize> = bits(cube.care).collect();
            let zeros: Vec<usize> = lits.iter().copied().filter(|&q| !bit(cube.value, q)).collect();
            relabel.extend(zeros.iter().map(|&q| Gate::X(q)));
            relabel.push(controlled_x(&lits, c.bit));
            relabel.extend(zeros.iter().map(|&q| Gate::X(q)));
        }
        for x in &mut strings {
            if bit(*x, c.bit) {
                *x = (*x ^ dmask) & !(1 << c.bit);
            }
        }
        live.retain(|&q| q != c.bit);
    }

    let mut gates = Vec::new();
    if !live.is_empty() {
        let mut local = vec![Complex64::new(0.0, 0.0); 1 << live.len()];
        for (x, a) in strings.iter().zip(&amps) {
            let idx = live.iter().enumerate().fold(0usize, |acc, (i, &q)| acc | (usize::from(bit(*x, q)) << i));
            local[idx] = *a;
        }
        gates = dense_gates(&live, &local);
    }
    gates.extend(relabel.into_iter().rev());
    Circuit::from_gates(n, gates).expect("relabel gates stay inside the register")
}

fn merge(s: &SparseState) -> Circuit {
    let n = s.n();
    let complex = !s.is_real();
    let mut strs: Vec<u64> = s.entries().iter().map(|e| e.0).collect();
    let mut amps: Vec<Complex64> = s.entries().iter().map(|e| e.1).collect();
    let mut ops: Vec<Gate> = Vec::new();
    let order_key = |x: u64| (Reverse(x.count_ones()), x);

    while strs.len() > 1 {
        let i1 = (0..strs.len()).min_by_key(|&i| order_key(strs[i])).expect("nonempty");
        let x1 = strs[i1];
        let i2 = (0..strs.len())
            .filter(|&i| i != i1)
            .min_by_key(|&i| ((x1 ^ strs[i]).count_ones(), order_key(strs[i])))
            .expect("two entries");
        let diff = x1 ^ strs[i2];
        let t = diff.trailing_zeros() as usize;
        let (lo_i, hi_i) = if bit(x1, t) { (i2, i1) } else { (i1, i2) };
        for j in bits(diff).filter(|&j| j != t) {
            ops.push(Gate::Cx(t, j));
            for x in &mut strs {
                if bit(*x, t) {
                    *x ^= 1 << j;
                }
            }
        }
        let lo = strs[lo_i];

        let mut rest: Vec<u64> = (0..strs.len()).filter(|&i| i != lo_i && i != hi_i).map(|i| strs[i]).collect();
        let mut controls: Vec<usize> = Vec::new();
        while !rest.is_empty() {
            let b = (0..n)
                .filter(|&b| b != t && !controls.contains(&b))
                .max_by_key(|&b| (rest.iter().filter(|&&x| bit(x, b) != bit(lo, b)).count(), Reverse(b)))
                .expect("distinct strings can always be separated");
            controls.push(b);
            rest.retain(|&x| bit(x, b) == bit(lo, b));
        }
        controls.sort_unstable();
        let zeros: Vec<usize> = controls.iter().copied().filter(|&q| !bit(lo, q)).collect();

        let (a0, a1) = (amps[lo_i], amps[hi_i]);
        ops.extend(zeros.iter().map(|&q| Gate::X(q)));
        let (theta, merged) = if complex {
            ops.extend(mcrz_gates(&controls, t, a0.arg() - a1.arg(), n));
            let r = a0.norm().hypot(a1.norm());
            (-2.0 * a1.norm().atan2(a0.norm()), Complex64::from_polar(r, 0.5 * (a0.arg() + a1.arg())))
        } else {
            (-2.0 * a1.re.atan2(a0.re), Complex64::new(a0.re.hypot(a1.re), 0.0))
        };
        ops.push(if controls.is_empty() { Gate::Ry(t, theta) } else { Gate::Mcry(controls.clone(), t, theta) });
        ops.extend(zeros.iter().map(|&q| Gate::X(q)));

        amps[lo_i] = merged;
        strs.swap_remove(hi_i);
        amps.swap_remove(hi_i);
    }
    ops.extend(bits(strs[0]).map(Gate::X));
    let gates = ops.iter().rev().map(Gate::inverse).collect();
    Circuit::from_gates(n, gates).expect("merge gates stay inside the register")
}
