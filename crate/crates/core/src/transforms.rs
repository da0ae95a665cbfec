//! Classical compression: unitary transforms, thresholding and reconstruction.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::signals::Signal;
use crate::{log2_exact, norm, Error, Result, NUMERICAL_ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransformKind {
    #[serde(alias = "fourier")]
    Dft,
    #[serde(alias = "haar", alias = "dhwt")]
    PacketHaar,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Dft => "dft",
            TransformKind::PacketHaar => "haar",
        })
    }
}

impl std::str::FromStr for TransformKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dft" | "fourier" => Ok(TransformKind::Dft),
            "haar" | "packet_haar" | "packethaar" | "dhwt" => Ok(TransformKind::PacketHaar),
            other => Err(Error::InvalidArgument(format!("unknown transform {other:?}"))),
        }
    }
}

/// Transform kind plus level count (`levels` is 0 for the DFT).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransformDescriptor {
    pub kind: TransformKind,
    pub levels: usize,
}

impl TransformDescriptor {
    pub fn dft() -> Self {
        TransformDescriptor { kind: TransformKind::Dft, levels: 0 }
    }

    pub fn packet_haar(levels: usize) -> Self {
        TransformDescriptor { kind: TransformKind::PacketHaar, levels }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.kind == TransformKind::PacketHaar && !(1..=n).contains(&self.levels) {
            return Err(Error::InvalidArgument(format!(
                "packet Haar levels must lie in 1..={n}, got {}",
                self.levels
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    #[serde(alias = "fraction", alias = "relative")]
    FractionOfMax,
    #[serde(alias = "abs")]
    Absolute,
}

impl fmt::Display for ThresholdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdMode::FractionOfMax => "fraction",
            ThresholdMode::Absolute => "absolute",
        })
    }
}

impl std::str::FromStr for ThresholdMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fraction" | "fraction_of_max" | "relative" => Ok(ThresholdMode::FractionOfMax),
            "absolute" | "abs" => Ok(ThresholdMode::Absolute),
            other => Err(Error::InvalidArgument(format!("unknown threshold mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPolicy {
    pub mode: ThresholdMode,
    pub value: f64,
}

impl ThresholdPolicy {
    pub fn new(mode: ThresholdMode, value: f64) -> Result<Self> {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::InvalidArgument(format!("threshold must be >= 0, got {value}")));
        }
        if mode == ThresholdMode::FractionOfMax && value > 1.0 {
            return Err(Error::InvalidArgument(format!("threshold fraction {value} > 1")));
        }
        Ok(ThresholdPolicy { mode, value })
    }

    pub fn fraction_of_max(value: f64) -> Result<Self> {
        Self::new(ThresholdMode::FractionOfMax, value)
    }

    pub fn absolute(value: f64) -> Result<Self> {
        Self::new(ThresholdMode::Absolute, value)
    }
}

/// Transform-domain vector with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct CompressedVector {
    pub coefficients: Vec<Complex64>,
    pub descriptor: TransformDescriptor,
    pub threshold: Option<ThresholdPolicy>,
    pub retained: usize,
}

impl CompressedVector {
    pub fn new(coefficients: Vec<Complex64>, descriptor: TransformDescriptor) -> Result<Self> {
        let n = log2_exact(coefficients.len())?;
        descriptor.validate(n)?;
        let retained = count_nonzero(&coefficients);
        Ok(CompressedVector { coefficients, descriptor, threshold: None, retained })
    }

    pub fn n(&self) -> usize {
        self.coefficients.len().trailing_zeros() as usize
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Nonzero entries in increasing index order.
    pub fn nonzeros(&self) -> Vec<(u64, Complex64)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
            .map(|(i, z)| (i as u64, *z))
            .collect()
    }
}

fn count_nonzero(v: &[Complex64]) -> usize {
    v.iter().filter(|z| **z != Complex64::new(0.0, 0.0)).count()
}

fn fft(samples: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let len = samples.len();
    let mut buf = samples.to_vec();
    let mut planner = FftPlanner::new();
    let plan = if inverse {
        planner.plan_fft_inverse(len)
    } else {
        planner.plan_fft_forward(len)
    };
    plan.process(&mut buf);
    let s = 1.0 / (len as f64).sqrt();
    for z in &mut buf {
        *z *= s;
    }
    buf
}

/// Unitary DFT, `X_k = N^{-1/2} sum_j x_j exp(-2 pi i k j / N)`.
pub fn dft(x: &Signal) -> CompressedVector {
    let mut coefficients = fft(x.samples(), false);
    for z in &mut coefficients {
        if z.norm() < NUMERICAL_ZERO {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    let retained = count_nonzero(&coefficients);
    CompressedVector {
        coefficients,
        descriptor: TransformDescriptor::dft(),
        threshold: None,
        retained,
    }
}

fn expect_kind(x: &CompressedVector, kind: TransformKind) -> Result<()> {
    if x.descriptor.kind != kind {
        return Err(Error::WrongTransform {
            expected: kind.to_string(),
            found: x.descriptor.kind.to_string(),
        });
    }
    Ok(())
}

fn into_signal(samples: Vec<Complex64>, label: &str) -> Result<Signal> {
    // Inputs are unit norm up to rounding, so renormalizing only removes drift.
    Signal::normalized(samples, label)
}

pub fn idft(x: &CompressedVector) -> Result<Signal> {
    expect_kind(x, TransformKind::Dft)?;
    into_signal(fft(&x.coefficients, true), "idft")
}

/// One analysis level applied to every contiguous block of `block` samples.
pub(crate) fn haar_level(v: &mut [Complex64], block: usize, tmp: &mut Vec<Complex64>) {
    let half = block / 2;
    tmp.resize(block, Complex64::new(0.0, 0.0));
    for chunk in v.chunks_exact_mut(block) {
        for k in 0..half {
            let a = chunk[2 * k];
            let b = chunk[2 * k + 1];
            tmp[k] = (a + b) * FRAC_1_SQRT_2;
            tmp[half + k] = (a - b) * FRAC_1_SQRT_2;
        }
        chunk.copy_from_slice(&tmp[..block]);
    }
}

pub(crate) fn haar_level_inverse(v: &mut [Complex64], block: usize, tmp: &mut Vec<Complex64>) {
    let half = block / 2;
    tmp.resize(block, Complex64::new(0.0, 0.0));
    for chunk in v.chunks_exact_mut(block) {
        for k in 0..half {
            let a = chunk[k];
            let d = chunk[half + k];
            tmp[2 * k] = (a + d) * FRAC_1_SQRT_2;
            tmp[2 * k + 1] = (a - d) * FRAC_1_SQRT_2;
        }
        chunk.copy_from_slice(&tmp[..block]);
    }
}

/// Packet Haar analysis: level `l` acts on blocks of `2^(n-l+1)` samples.
pub fn packet_dhwt(x: &Signal, levels: usize) -> Result<CompressedVector> {
    let n = x.n();
    let descriptor = TransformDescriptor::packet_haar(levels);
    descriptor.validate(n)?;
    let mut v = x.samples().to_vec();
    let mut tmp = Vec::new();
    for l in 1..=levels {
        haar_level(&mut v, 1 << (n - l + 1), &mut tmp);
    }
    CompressedVector::new(v, descriptor)
}

pub fn packet_idhwt(x: &CompressedVector) -> Result<Signal> {
    expect_kind(x, TransformKind::PacketHaar)?;
    let n = x.n();
    let mut v = x.coefficients.clone();
    let mut tmp = Vec::new();
    for l in (1..=x.descriptor.levels).rev() {
        haar_level_inverse(&mut v, 1 << (n - l + 1), &mut tmp);
    }
    into_signal(v, "idhwt")
}

pub fn forward(x: &Signal, descriptor: TransformDescriptor) -> Result<CompressedVector> {
    match descriptor.kind {
        TransformKind::Dft => Ok(dft(x)),
        TransformKind::PacketHaar => packet_dhwt(x, descriptor.levels),
    }
}

/// Absolute cutoff implied by `policy` for the coefficients `x`.
pub fn absolute_threshold(x: &[Complex64], policy: ThresholdPolicy) -> f64 {
    match policy.mode {
        ThresholdMode::Absolute => policy.value,
        ThresholdMode::FractionOfMax => {
            policy.value * x.iter().map(|z| z.norm()).fold(0.0, f64::max)
        }
    }
}

/// Zeroes coefficients with magnitude strictly below the cutoff and
/// renormalizes the survivors.
pub fn threshold_normalize(x: &CompressedVector, policy: ThresholdPolicy) -> Result<CompressedVector> {
    if norm(&x.coefficients) == 0.0 {
        return Err(Error::EmptySupport);
    }
    let cut = absolute_threshold(&x.coefficients, policy);
    let mut c: Vec<Complex64> = x
        .coefficients
        .iter()
        .map(|&z| if z.norm() < cut { Complex64::new(0.0, 0.0) } else { z })
        .collect();
    let retained = count_nonzero(&c);
    if retained == 0 {
        return Err(Error::EmptySupport);
    }
    let s = norm(&c);
    for z in &mut c {
        *z /= s;
    }
    Ok(CompressedVector {
        coefficients: c,
        descriptor: x.descriptor,
        threshold: Some(policy),
        retained,
    })
}

pub fn compression_ratio(len: usize, d: usize) -> Result<f64> {
    if d == 0 {
        return Err(Error::EmptySupport);
    }
    Ok(len as f64 / d as f64)
}

/// Inverse transform of a (thresholded) coefficient vector.
pub fn classical_reconstruct(x: &CompressedVector) -> Result<Signal> {
    match x.descriptor.kind {
        TransformKind::Dft => idft(x),
        TransformKind::PacketHaar => packet_idhwt(x),
    }
}
