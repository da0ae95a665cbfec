//! Decompression circuits and the Fourier series loader baseline.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::loaders::dense_complex_load;
use crate::signals::Signal;
use crate::transforms::dft;
use crate::{norm, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompressionKind {
    InverseQft,
    InversePacketQhwt,
    Fsl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompressionPlan {
    pub kind: DecompressionKind,
    pub n: usize,
    #[serde(default)]
    pub levels: usize,
    #[serde(default)]
    pub m: usize,
}

impl DecompressionPlan {
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            DecompressionKind::InverseQft if self.n == 0 => Err(Error::InvalidArgument("iqft needs n >= 1".into())),
            DecompressionKind::InversePacketQhwt => check_qhwt(self.n, self.levels),
            DecompressionKind::Fsl if self.m + 1 > self.n => {
                Err(Error::InvalidArgument(format!("FSL needs m <= n - 1, got n={} m={}", self.n, self.m)))
            }
            _ => Ok(()),
        }
    }
}

/// Inverse QFT with unitary `e^{+2 pi i j k / N} / sqrt(N)`.
pub fn iqft(n: usize, swaps: bool) -> Circuit {
    let mut gates = Vec::new();
    for j in (0..n).rev() {
        gates.push(Gate::H(j));
        for k in (0..j).rev() {
            gates.push(Gate::CPhase(k, j, PI / (1u64 << (j - k)) as f64));
        }
    }
    if swaps {
        for i in 0..n / 2 {
            gates.push(Gate::Swap(i, n - 1 - i));
        }
    }
    Circuit::from_gates(n, gates).expect("iqft operands in range")
}

fn check_qhwt(n: usize, levels: usize) -> Result<()> {
    if levels == 0 || levels + 1 > n {
        return Err(Error::InvalidArgument(format!(
            "inverse packet QHWT needs 1 <= L <= n - 1, got n={n} L={levels}"
        )));
    }
    Ok(())
}

/// Inverse of one packet Haar level on the low `m` qubits.
pub fn qhwt_inverse_block(m: usize) -> Vec<Gate> {
    let mut gates: Vec<Gate> = (1..m).rev().map(|q| Gate::Swap(q, q - 1)).collect();
    gates.push(Gate::H(0));
    gates
}

/// Inverse packet Haar transform with `levels` levels on `n` qubits.
pub fn inverse_packet_qhwt(n: usize, levels: usize) -> Result<Circuit> {
    check_qhwt(n, levels)?;
    let gates = (n - levels + 1..=n).flat_map(qhwt_inverse_block).collect();
    Circuit::from_gates(n, gates)
}

/// The `2^{m+1}` lowest-frequency DFT coefficients of `x`: register index
/// `j < 2^m` holds frequency `j`, index `j >= 2^m` holds `N - 2^{m+1} + j`.
pub fn fsl_coefficients(x: &Signal, m: usize) -> Result<Vec<Complex64>> {
    let n = x.n();
    if m + 1 > n {
        return Err(Error::InvalidArgument(format!("FSL needs m <= n - 1, got n={n} m={m}")));
    }
    let spec = dft(x).coefficients;
    let len = spec.len();
    let half = 1usize << m;
    let mut c: Vec<Complex64> = (0..2 * half)
        .map(|j| if j < half { spec[j] } else { spec[len - 2 * half + j] })
        .collect();
    let nrm = norm(&c);
    if nrm == 0.0 {
        return Err(Error::EmptySupport);
    }
    for z in &mut c {
        *z /= nrm;
    }
    Ok(c)
}

/// Dense load of the coefficient register, CX fan-out from the sign qubit and
/// an inverse QFT over all `n` qubits.
pub fn fsl_circuit(coeffs: &[Complex64], n: usize, m: usize) -> Result<Circuit> {
    if m + 1 > n || coeffs.len() != 1 << (m + 1) {
        return Err(Error::LengthMismatch(coeffs.len(), 1 << (m + 1)));
    }
    let load = dense_complex_load(coeffs)?;
    let mut c = load.widen(n)?;
    for q in m + 1..n {
        c.push(Gate::Cx(m, q))?;
    }
    c.append(&iqft(n, true))?;
    Ok(c)
}

/// Classical counterpart of the FSL state: inverse DFT of the truncated,
/// renormalized spectrum.
pub fn fsl_reconstruct(coeffs: &[Complex64], n: usize, m: usize) -> Result<Signal> {
    if m + 1 > n || coeffs.len() != 1 << (m + 1) {
        return Err(Error::LengthMismatch(coeffs.len(), 1 << (m + 1)));
    }
    let len = 1usize << n;
    let half = 1usize << m;
    let mut spec = vec![Complex64::new(0.0, 0.0); len];
    for (j, &c) in coeffs.iter().enumerate() {
        let k = if j < half { j } else { len - 2 * half + j };
        spec[k] = c;
    }
    let x = crate::transforms::CompressedVector::new(spec, crate::transforms::TransformDescriptor::dft())?;
    crate::transforms::idft(&x)
}

/// Closed-form CX count of [`fsl_circuit`].
pub fn fsl_cx_formula(n: usize, m: usize) -> usize {
    2 * ((1 << (m + 1)) - 2) + (n - m - 1) + n * (n - 1) + 3 * (n / 2)
}

pub fn qhwt_cx_formula(n: usize, levels: usize) -> usize {
    3 * (1..=levels).map(|l| n - l).sum::<usize>()
}

pub fn qhwt_depth_formula(n: usize, levels: usize) -> usize {
    3 * n + 3 * levels - 5
}

pub fn build(plan: &DecompressionPlan) -> Result<Circuit> {
    plan.validate()?;
    match plan.kind {
        DecompressionKind::InverseQft => Ok(iqft(plan.n, true)),
        DecompressionKind::InversePacketQhwt => inverse_packet_qhwt(plan.n, plan.levels),
        DecompressionKind::Fsl => Err(Error::InvalidArgument("FSL plans need coefficients; use fsl_circuit".into())),
    }
}
