//! Dense state-vector simulation and pure-state metrics.
//!
//! Basis index bit `q` is qubit `q` (qubit 0 is least significant).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::{Error, Result};

pub const MAX_QUBITS: usize = 24;
pub const MAX_UNITARY_QUBITS: usize = 8;

type M2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zero_state(n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Capacity(n, MAX_QUBITS));
        }
        let mut amplitudes = vec![ZERO; 1 << n];
        amplitudes[0] = ONE;
        Ok(StateVector { amplitudes })
    }

    pub fn basis(n: usize, k: usize) -> Result<Self> {
        let mut s = Self::zero_state(n)?;
        s.amplitudes[0] = ZERO;
        s.amplitudes[k] = ONE;
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm(&self) -> f64 {
        crate::norm(&self.amplitudes)
    }

    pub fn apply(&mut self, c: &Circuit) -> Result<()> {
        if c.n() > self.n() {
            return Err(Error::LengthMismatch(1 << c.n(), self.amplitudes.len()));
        }
        for g in c.gates() {
            apply_gate(&mut self.amplitudes, g);
        }
        Ok(())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn matrix(g: &Gate) -> M2 {
    match *g {
        Gate::H(_) => [[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]],
        Gate::X(_) | Gate::Cx(..) | Gate::Ccx(..) | Gate::Mcx(..) => [[ZERO, ONE], [ONE, ZERO]],
        Gate::Rx(_, a) => {
            let (s, co) = (a / 2.0).sin_cos();
            [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
        }
        Gate::Ry(_, a) | Gate::Mcry(_, _, a) => {
            let (s, co) = (a / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        Gate::Rz(_, a) => [[Complex64::from_polar(1.0, -a / 2.0), ZERO], [ZERO, Complex64::from_polar(1.0, a / 2.0)]],
        Gate::Phase(_, a) | Gate::CPhase(_, _, a) => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, a)]],
        Gate::Swap(..) => unreachable!("swap has no 2x2 form"),
    }
}

fn apply_controlled(amps: &mut [Complex64], mask: usize, target: usize, m: &M2) {
    let t = 1usize << target;
    for i in 0..amps.len() {
        if i & t != 0 || i & mask != mask {
            continue;
        }
        let (a, b) = (amps[i], amps[i | t]);
        amps[i] = m[0][0] * a + m[0][1] * b;
        amps[i | t] = m[1][0] * a + m[1][1] * b;
    }
}

fn mask_of(qs: &[usize]) -> usize {
    qs.iter().fold(0, |m, &q| m | (1 << q))
}

pub fn apply_gate(amps: &mut [Complex64], g: &Gate) {
    match g {
        Gate::Swap(a, b) => {
            let (ma, mb) = (1usize << a, 1usize << b);
            for i in 0..amps.len() {
                if i & ma != 0 && i & mb == 0 {
                    amps.swap(i, i ^ ma ^ mb);
                }
            }
        }
        Gate::H(q) | Gate::X(q) | Gate::Rx(q, _) | Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::Phase(q, _) => {
            apply_controlled(amps, 0, *q, &matrix(g))
        }
        Gate::Cx(ctl, t) | Gate::CPhase(ctl, t, _) => apply_controlled(amps, 1 << ctl, *t, &matrix(g)),
        Gate::Ccx(a, b, t) => apply_controlled(amps, (1 << a) | (1 << b), *t, &matrix(g)),
        Gate::Mcx(cs, t) | Gate::Mcry(cs, t, _) => apply_controlled(amps, mask_of(cs), *t, &matrix(g)),
    }
}

/// Runs `c` on `|0...0>`.
pub fn simulate(c: &Circuit) -> Result<StateVector> {
    let mut s = StateVector::zero_state(c.n())?;
    s.apply(c)?;
    Ok(s)
}

/// Runs `c` on an arbitrary input state of matching width.
pub fn simulate_from(c: &Circuit, input: &[Complex64]) -> Result<StateVector> {
    if input.len() != 1usize << c.n() {
        return Err(Error::LengthMismatch(input.len(), 1 << c.n()));
    }
    let mut s = StateVector { amplitudes: input.to_vec() };
    s.apply(c)?;
    Ok(s)
}

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Matrix { dim, data }
    }

    pub fn get(&self, r: usize, col: usize) -> Complex64 {
        self.data[r * self.dim + col]
    }
}

/// Full unitary, column `j` being the image of basis state `j`.
pub fn unitary_of(c: &Circuit) -> Result<Matrix> {
    let n = c.n();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::Capacity(n, MAX_UNITARY_QUBITS));
    }
    let dim = 1 << n;
    let mut data = vec![ZERO; dim * dim];
    for j in 0..dim {
        let s = {
            let mut s = StateVector::basis(n, j)?;
            s.apply(c)?;
            s
        };
        for (r, a) in s.amplitudes.iter().enumerate() {
            data[r * dim + j] = *a;
        }
    }
    Ok(Matrix { dim, data })
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    Ok(inner(a, b)?.norm_sqr())
}

/// `sqrt(1 - F)`, clamped to `[0, 1]`.
///
/// `1 - F` is evaluated as `delta - delta^2 / 4` with
/// `delta = |a - e^{-i arg<a|b>} b|^2`, which equals `1 - |<a|b>|^2` for unit
/// vectors and keeps nearly identical states from rounding to `~1e-8`.
pub fn trace_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    let ip = inner(a, b)?;
    if ip.norm() == 0.0 {
        return Ok(1.0);
    }
    let phase = ip.conj() / ip.norm();
    let delta: f64 = a.iter().zip(b).map(|(x, y)| (x - y * phase).norm_sqr()).sum();
    Ok((delta - delta * delta / 4.0).clamp(0.0, 1.0).sqrt())
}

pub fn trace_distance_from_fidelity(f: f64) -> f64 {
    (1.0 - f).clamp(0.0, 1.0).sqrt()
}

/// Largest elementwise deviation after removing the best global phase.
pub fn phase_aligned_max_diff(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    let ip = inner(b, a)?;
    let phase = if ip.norm() > 0.0 { ip / ip.norm() } else { ONE };
    Ok(a.iter().zip(b).map(|(x, y)| (x - y * phase).norm()).fold(0.0, f64::max))
}

pub fn equal_up_to_global_phase(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    phase_aligned_max_diff(a, b).is_ok_and(|d| d <= tol)
}

/// Compares two matrices modulo one common global phase.
pub fn unitaries_equal_up_to_phase(u: &Matrix, v: &Matrix, tol: f64) -> bool {
    u.dim == v.dim && equal_up_to_global_phase(&u.data, &v.data, tol)
}
