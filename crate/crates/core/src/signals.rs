//! Benchmark signal generators and waveform ingestion.

use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::{log2_exact, norm, Error, Result};

/// Periodic benchmark amplitudes.
pub const PERIODIC_A: f64 = 0.41099;
pub const PERIODIC_B: f64 = 0.57539;

/// Default sinc sampling range, calibrated with [`calibrate_sinc_half_width`].
pub const SINC_DEFAULT_HALF_WIDTH: f64 = 10.0;

/// A unit-norm vector of `2^n` complex samples.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    samples: Vec<Complex64>,
    n: usize,
    pub label: String,
    /// Sample count before zero padding.
    pub original_len: usize,
}

impl Signal {
    /// Normalizes `samples` to unit norm.
    pub fn normalized(samples: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        let n = log2_exact(samples.len())?;
        let nrm = norm(&samples);
        if !(nrm > 0.0) || !nrm.is_finite() {
            return Err(Error::DegenerateSignal("zero or non-finite norm".into()));
        }
        let samples: Vec<Complex64> = samples.into_iter().map(|z| z / nrm).collect();
        let original_len = samples.len();
        Ok(Signal { samples, n, label: label.into(), original_len })
    }

    /// Keeps samples whose norm is already 1 within 1e-12 bit-for-bit and
    /// normalizes anything else.
    pub fn from_samples(samples: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if (norm(&samples) - 1.0).abs() <= 1e-12 {
            Self::from_unit(samples, label)
        } else {
            Self::normalized(samples, label)
        }
    }

    pub fn from_real(samples: &[f64], label: impl Into<String>) -> Result<Self> {
        Self::normalized(samples.iter().map(|&v| Complex64::new(v, 0.0)).collect(), label)
    }

    /// Wraps samples that are already unit norm.
    pub fn from_unit(samples: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        let n = log2_exact(samples.len())?;
        let dev = (norm(&samples) - 1.0).abs();
        if dev > 1e-12 {
            return Err(Error::NormViolation(dev));
        }
        let original_len = samples.len();
        Ok(Signal { samples, n, label: label.into(), original_len })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.samples.iter().all(|z| z.im == 0.0)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.samples.iter().map(|z| z.re).collect()
    }
}

fn linspace(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    (0..n).map(move |i| lo + step * i as f64)
}

/// Four-tone periodic signal whose DFT is supported on {3, 20, N-20, N-3}.
pub fn gen_periodic(len: usize) -> Result<Signal> {
    log2_exact(len)?;
    if len < 64 {
        return Err(Error::InvalidLength(len));
    }
    let nf = len as f64;
    let s = 1.0 / nf.sqrt();
    let x: Vec<f64> = (0..len)
        .map(|j| {
            let t = j as f64 / nf;
            s * (-2.0 * PERIODIC_A * (2.0 * PI * 3.0 * t).sin()
                + 2.0 * PERIODIC_B * (2.0 * PI * 20.0 * t).cos())
        })
        .collect();
    Signal::from_real(&x, "periodic")
}

/// Signal constant on 8 equal blocks.
pub fn gen_piecewise(len: usize, block_values: &[f64; 8]) -> Result<Signal> {
    log2_exact(len)?;
    if len % 8 != 0 {
        return Err(Error::InvalidLength(len));
    }
    if block_values.iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateSignal("all block values are zero".into()));
    }
    let b = len / 8;
    let x: Vec<f64> = (0..len).map(|j| block_values[j / b]).collect();
    Signal::from_real(&x, "piecewise")
}

pub fn sinc(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        (PI * t).sin() / (PI * t)
    }
}

/// sinc(t) on `len` equispaced points spanning `[t_min, t_max]` inclusive.
pub fn gen_sinc(len: usize, t_min: f64, t_max: f64) -> Result<Signal> {
    if len < 2 {
        return Err(Error::InvalidLength(len));
    }
    log2_exact(len)?;
    if !(t_min < 0.0 && 0.0 < t_max) {
        return Err(Error::InvalidArgument(format!(
            "sinc range must straddle zero, got [{t_min}, {t_max}]"
        )));
    }
    let x: Vec<f64> = linspace(len, t_min, t_max).map(sinc).collect();
    Signal::from_real(&x, "sinc")
}

pub fn gaussian(x: f64, mu: f64, sigma: f64) -> f64 {
    (-(x - mu) * (x - mu) / (2.0 * sigma * sigma)).exp()
}

pub fn gen_gaussian(len: usize, mu: f64, sigma: f64, x_min: f64, x_max: f64) -> Result<Signal> {
    log2_exact(len)?;
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let x: Vec<f64> = linspace(len, x_min, x_max).map(|v| gaussian(v, mu, sigma)).collect();
    Signal::from_real(&x, "gaussian")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
}

/// Sum of Gaussian bumps plus white noise.
///
/// Randomness comes from ChaCha8 (`rand_chacha` 0.9), whose output stream is
/// fixed by the seed on every platform. Component draws use stream 0 and the
/// additive noise uses stream 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub components: Vec<MixtureComponent>,
    pub noise_std: f64,
    pub seed: u64,
}

impl MixtureSpec {
    /// `k` components with centers in [-4.5, 4.5], widths in [0.12, 0.6] and
    /// amplitudes in [0.3, 1.0], plus noise of standard deviation 0.001.
    pub fn random(k: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let components = (0..k)
            .map(|_| MixtureComponent {
                center: rng.random_range(-4.5..=4.5),
                width: rng.random_range(0.12..=0.6),
                amplitude: rng.random_range(0.3..=1.0),
            })
            .collect();
        MixtureSpec { components, noise_std: 0.001, seed }
    }

    pub fn benchmark(seed: u64) -> Self {
        Self::random(12, seed)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::DegenerateSignal("mixture has no components".into()));
        }
        if let Some(c) = self.components.iter().find(|c| !(c.width > 0.0)) {
            return Err(Error::InvalidArgument(format!("component width {} <= 0", c.width)));
        }
        if !(self.noise_std >= 0.0) {
            return Err(Error::InvalidArgument(format!("noise_std {} < 0", self.noise_std)));
        }
        Ok(())
    }
}

pub fn gen_gaussian_mixture(len: usize, spec: &MixtureSpec, x_min: f64, x_max: f64) -> Result<Signal> {
    log2_exact(len)?;
    spec.validate()?;
    let mut x: Vec<f64> = linspace(len, x_min, x_max)
        .map(|v| {
            spec.components
                .iter()
                .map(|c| c.amplitude * gaussian(v, c.center, c.width))
                .sum()
        })
        .collect();
    if spec.noise_std > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        rng.set_stream(1);
        let noise = Normal::new(0.0, spec.noise_std)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        for v in &mut x {
            *v += noise.sample(&mut rng);
        }
    }
    Signal::from_real(&x, "mixture")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColumnSelector {
    Name(String),
    Index(usize),
}

impl std::str::FromStr for ColumnSelector {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

impl std::fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Name(s) => write!(f, "{s}"),
            ColumnSelector::Index(i) => write!(f, "{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum PadPosition {
    #[default]
    Tail,
    Head,
}

/// Zero-pads to the next power of two and normalizes.
pub fn pad_and_normalize(values: &[f64], pad: PadPosition, label: &str) -> Result<Signal> {
    let len = values.len().next_power_of_two().max(1);
    let mut x = vec![0.0; len];
    let off = match pad {
        PadPosition::Tail => 0,
        PadPosition::Head => len - values.len(),
    };
    x[off..off + values.len()].copy_from_slice(values);
    let mut s = Signal::from_real(&x, label)?;
    s.original_len = values.len();
    Ok(s)
}

fn parse_cell(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Reads one numeric column of a CSV file.
pub fn read_csv_column(path: &Path, selector: &ColumnSelector) -> Result<Vec<f64>> {
    if !path.exists() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let mut rows = rdr.records();
    let mut values = Vec::new();
    let col = match selector {
        ColumnSelector::Name(name) => {
            let header = match rows.next() {
                Some(r) => r?,
                None => return Err(Error::EmptyColumn(name.clone())),
            };
            header
                .iter()
                .position(|h| h.trim_matches('"') == name)
                .ok_or_else(|| Error::MissingColumn(name.clone()))?
        }
        ColumnSelector::Index(i) => *i,
    };
    let mut first = true;
    let row_offset = usize::from(matches!(selector, ColumnSelector::Name(_)));
    for (r, rec) in rows.enumerate() {
        let rec = rec?;
        let cell = rec.get(col).ok_or_else(|| Error::MissingColumn(selector.to_string()))?;
        match parse_cell(cell) {
            Some(v) => values.push(v),
            None if first && matches!(selector, ColumnSelector::Index(_)) => {}
            None => {
                return Err(Error::NonNumeric { row: r + row_offset, value: cell.to_string() })
            }
        }
        first = false;
    }
    if values.is_empty() {
        return Err(Error::EmptyColumn(selector.to_string()));
    }
    Ok(values)
}

pub fn ingest_waveform_csv(path: &Path, selector: &ColumnSelector) -> Result<Signal> {
    ingest_waveform_csv_with(path, selector, PadPosition::Tail)
}

pub fn ingest_waveform_csv_with(path: &Path, selector: &ColumnSelector, pad: PadPosition) -> Result<Signal> {
    let values = read_csv_column(path, selector)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "waveform".into());
    pad_and_normalize(&values, pad, &label)
}

/// One row of a sinc range scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SincCalibrationRow {
    pub half_width: f64,
    pub retained: usize,
}

/// Scans symmetric sinc ranges `[-h, h]` and returns the scan plus the half
/// width whose retained count after a packet Haar transform and relative
/// thresholding is closest to `target` (ties go to the smaller `h`).
pub fn calibrate_sinc_half_width(
    n: usize,
    levels: usize,
    tau_fraction: f64,
    target: usize,
    candidates: &[f64],
) -> Result<(f64, Vec<SincCalibrationRow>)> {
    use crate::transforms::{packet_dhwt, threshold_normalize, ThresholdPolicy};
    let policy = ThresholdPolicy::fraction_of_max(tau_fraction)?;
    let mut rows = Vec::with_capacity(candidates.len());
    for &h in candidates {
        let s = gen_sinc(1 << n, -h, h)?;
        let x = threshold_normalize(&packet_dhwt(&s, levels)?, policy)?;
        rows.push(SincCalibrationRow { half_width: h, retained: x.retained });
    }
    let best = rows
        .iter()
        .min_by(|a, b| {
            let da = a.retained.abs_diff(target);
            let db = b.retained.abs_diff(target);
            da.cmp(&db).then(a.half_width.total_cmp(&b.half_width))
        })
        .ok_or_else(|| Error::InvalidArgument("no calibration candidates".into()))?;
    Ok((best.half_width, rows))
}
