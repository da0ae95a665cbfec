//! State preparation circuits: dense loaders and sparse state preparation.

mod sqsp;

use num_complex::Complex64;

use crate::circuit::multiplex::{diagonal, multiplexed_rotation, Axis};
use crate::circuit::{Circuit, Gate};
use crate::transforms::CompressedVector;
use crate::{log2_exact, Error, Result};

pub use sqsp::{sqsp, sqsp_cx_bound, sqsp_per_entry_bound, sqsp_with, SqspStrategy};

/// Norm tolerance accepted by the loaders.
pub const LOADER_NORM_TOL: f64 = 1e-9;

/// `n`-qubit state with `d >= 1` nonzero amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseState {
    n: usize,
    entries: Vec<(u64, Complex64)>,
}

impl SparseState {
    /// Sorts `entries` by index and checks the state invariants.
    pub fn new(n: usize, mut entries: Vec<(u64, Complex64)>) -> Result<Self> {
        if n > 63 {
            return Err(Error::InvalidArgument(format!("{n} qubits is too wide")));
        }
        entries.sort_by_key(|e| e.0);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateIndex(w[0].0));
            }
        }
        if let Some(&(i, _)) = entries.last() {
            if i >> n != 0 {
                return Err(Error::InvalidArgument(format!("index {i} outside {n} qubits")));
            }
        }
        if entries.iter().any(|e| e.1 == Complex64::new(0.0, 0.0)) {
            return Err(Error::InvalidArgument("zero amplitude in sparse entries".into()));
        }
        if entries.is_empty() {
            return Err(Error::EmptySupport);
        }
        let nrm: f64 = entries.iter().map(|e| e.1.norm_sqr()).sum::<f64>().sqrt();
        if (nrm - 1.0).abs() > 1e-12 {
            return Err(Error::NormViolation((nrm - 1.0).abs()));
        }
        Ok(SparseState { n, entries })
    }

    /// Like [`SparseState::new`] but rescales to unit norm first.
    pub fn normalized(n: usize, entries: Vec<(u64, Complex64)>) -> Result<Self> {
        let nrm: f64 = entries.iter().map(|e| e.1.norm_sqr()).sum::<f64>().sqrt();
        if !(nrm > 0.0) {
            return Err(Error::EmptySupport);
        }
        Self::new(n, entries.into_iter().map(|(i, a)| (i, a / nrm)).collect())
    }

    pub fn from_compressed(x: &CompressedVector) -> Result<Self> {
        Self::new(x.n(), x.nonzeros())
    }

    pub fn from_dense(amps: &[Complex64]) -> Result<Self> {
        let n = log2_exact(amps.len())?;
        let entries = amps
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != Complex64::new(0.0, 0.0))
            .map(|(i, a)| (i as u64, *a))
            .collect();
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u64, Complex64)] {
        &self.entries
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|e| e.1.im == 0.0)
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        for &(i, a) in &self.entries {
            v[i as usize] = a;
        }
        v
    }
}

fn check_norm<T>(v: &[T], sq: impl Fn(&T) -> f64) -> Result<usize> {
    let m = log2_exact(v.len())?;
    let nrm = v.iter().map(sq).sum::<f64>().sqrt();
    if (nrm - 1.0).abs() > LOADER_NORM_TOL {
        return Err(Error::NormViolation((nrm - 1.0).abs()));
    }
    Ok(m)
}

/// RY cascade preparing `amps` on `qubits` (bit `i` of an index is
/// `qubits[i]`). With `signed`, leaf angles carry the amplitude signs;
/// otherwise magnitudes are used throughout.
fn ry_tree(qubits: &[usize], amps: &[f64], signed: bool) -> Vec<Gate> {
    let m = qubits.len();
    let mut sums: Vec<Vec<f64>> = vec![amps.iter().map(|a| a * a).collect()];
    for j in 0..m {
        let prev = &sums[j];
        sums.push((0..prev.len() / 2).map(|y| prev[2 * y] + prev[2 * y + 1]).collect());
    }
    let mut out = Vec::new();
    for j in (0..m).rev() {
        let prefixes = 1usize << (m - 1 - j);
        let angles: Vec<f64> = (0..prefixes)
            .map(|p| {
                if j == 0 && signed {
                    2.0 * amps[2 * p + 1].atan2(amps[2 * p])
                } else {
                    2.0 * sums[j][2 * p + 1].sqrt().atan2(sums[j][2 * p].sqrt())
                }
            })
            .collect();
        out.extend(multiplexed_rotation(Axis::Y, &qubits[j + 1..], qubits[j], &angles));
    }
    out
}

/// Dense loader on a subset of qubits: signed RY tree for real data, RY tree
/// on magnitudes plus a diagonal phase cascade otherwise.
pub(crate) fn dense_gates(qubits: &[usize], amps: &[Complex64]) -> Vec<Gate> {
    if amps.iter().all(|a| a.im == 0.0) {
        let re: Vec<f64> = amps.iter().map(|a| a.re).collect();
        return ry_tree(qubits, &re, true);
    }
    complex_gates(qubits, amps)
}

fn complex_gates(qubits: &[usize], amps: &[Complex64]) -> Vec<Gate> {
    let mags: Vec<f64> = amps.iter().map(|a| a.norm()).collect();
    let mut out = ry_tree(qubits, &mags, false);
    let phases: Vec<f64> = amps.iter().map(|a| a.arg()).collect();
    out.extend(diagonal(qubits, &phases));
    out
}

/// Exact amplitude encoding of a real unit vector: `2^n - 2` CX.
pub fn eae_real(x: &[f64]) -> Result<Circuit> {
    let n = check_norm(x, |v| v * v)?;
    let qubits: Vec<usize> = (0..n).collect();
    Circuit::from_gates(n, ry_tree(&qubits, x, true))
}

/// [`eae_real`] for complex samples whose imaginary parts vanish.
pub fn eae_real_complex(x: &[Complex64]) -> Result<Circuit> {
    if x.iter().any(|z| z.im != 0.0) {
        return Err(Error::InvalidArgument(
            "complex amplitudes; use dense_complex_load".into(),
        ));
    }
    eae_real(&x.iter().map(|z| z.re).collect::<Vec<_>>())
}

/// Magnitude cascade followed by a phase cascade: `2 (2^m - 2)` CX.
pub fn dense_complex_load(c: &[Complex64]) -> Result<Circuit> {
    let m = check_norm(c, |z| z.norm_sqr())?;
    let qubits: Vec<usize> = (0..m).collect();
    Circuit::from_gates(m, complex_gates(&qubits, c))
}
