use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::loaders::SqspStrategy;
use crate::signals::{
    gen_gaussian, gen_gaussian_mixture, gen_periodic, gen_piecewise, gen_sinc, ingest_waveform_csv_with,
    ColumnSelector, MixtureSpec, PadPosition, Signal, SINC_DEFAULT_HALF_WIDTH,
};
use crate::transforms::{ThresholdPolicy, TransformDescriptor, TransformKind};
use crate::{Error, Result};

pub const DEFAULT_PIECEWISE_BLOCKS: [f64; 8] = [0.2, 0.5, 0.9, 0.4, 0.7, 1.0, 0.3, 0.6];

fn blocks_default() -> [f64; 8] {
    DEFAULT_PIECEWISE_BLOCKS
}
fn sinc_min() -> f64 {
    -SINC_DEFAULT_HALF_WIDTH
}
fn sinc_max() -> f64 {
    SINC_DEFAULT_HALF_WIDTH
}
fn sigma_default() -> f64 {
    0.8
}
fn x_min_default() -> f64 {
    -5.0
}
fn x_max_default() -> f64 {
    5.0
}
fn components_default() -> usize {
    12
}
fn noise_default() -> f64 {
    0.001
}
fn column_default() -> String {
    "PLETH".into()
}
fn epsilon_default() -> f64 {
    0.1
}
fn yes() -> bool {
    true
}

/// Signal source of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SignalSpec {
    Periodic {
        n: usize,
    },
    Piecewise {
        n: usize,
        #[serde(default = "blocks_default")]
        blocks: [f64; 8],
    },
    Sinc {
        n: usize,
        #[serde(default = "sinc_min")]
        t_min: f64,
        #[serde(default = "sinc_max")]
        t_max: f64,
    },
    Gaussian {
        n: usize,
        #[serde(default)]
        mu: f64,
        #[serde(default = "sigma_default")]
        sigma: f64,
        #[serde(default = "x_min_default")]
        x_min: f64,
        #[serde(default = "x_max_default")]
        x_max: f64,
    },
    Mixture {
        n: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "components_default")]
        components: usize,
        #[serde(default = "noise_default")]
        noise_std: f64,
        #[serde(default = "x_min_default")]
        x_min: f64,
        #[serde(default = "x_max_default")]
        x_max: f64,
    },
    Csv {
        path: PathBuf,
        #[serde(default = "column_default")]
        column: String,
        #[serde(default)]
        pad: PadPosition,
    },
}

impl SignalSpec {
    pub fn gaussian_benchmark() -> Self {
        SignalSpec::Gaussian { n: 15, mu: 0.0, sigma: 0.8, x_min: -5.0, x_max: 5.0 }
    }

    pub fn sinc_benchmark() -> Self {
        SignalSpec::Sinc { n: 15, t_min: sinc_min(), t_max: sinc_max() }
    }

    pub fn mixture_benchmark(seed: u64) -> Self {
        SignalSpec::Mixture { n: 15, seed, components: 12, noise_std: 0.001, x_min: -5.0, x_max: 5.0 }
    }

    pub fn generate(&self) -> Result<Signal> {
        let len = |n: usize| -> Result<usize> {
            if n > 30 {
                return Err(Error::InvalidArgument(format!("n = {n} is too large")));
            }
            Ok(1usize << n)
        };
        match self {
            SignalSpec::Periodic { n } => gen_periodic(len(*n)?),
            SignalSpec::Piecewise { n, blocks } => gen_piecewise(len(*n)?, blocks),
            SignalSpec::Sinc { n, t_min, t_max } => gen_sinc(len(*n)?, *t_min, *t_max),
            SignalSpec::Gaussian { n, mu, sigma, x_min, x_max } => gen_gaussian(len(*n)?, *mu, *sigma, *x_min, *x_max),
            SignalSpec::Mixture { n, seed, components, noise_std, x_min, x_max } => {
                let mut spec = MixtureSpec::random(*components, *seed);
                spec.noise_std = *noise_std;
                gen_gaussian_mixture(len(*n)?, &spec, *x_min, *x_max)
            }
            SignalSpec::Csv { path, column, pad } => {
                let sel: ColumnSelector = column.parse().expect("infallible");
                ingest_waveform_csv_with(path, &sel, *pad)
            }
        }
    }

    /// Resolves a relative CSV path against `base`.
    pub fn rebase(&mut self, base: &Path) {
        if let SignalSpec::Csv { path, .. } = self {
            if path.is_relative() {
                *path = base.join(&*path);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformConfig {
    pub kind: TransformKind,
    #[serde(default)]
    pub levels: usize,
}

impl TransformConfig {
    pub fn dft() -> Self {
        TransformConfig { kind: TransformKind::Dft, levels: 0 }
    }

    pub fn haar(levels: usize) -> Self {
        TransformConfig { kind: TransformKind::PacketHaar, levels }
    }

    pub fn descriptor(&self) -> TransformDescriptor {
        match self.kind {
            TransformKind::Dft => TransformDescriptor::dft(),
            TransformKind::PacketHaar => TransformDescriptor::packet_haar(self.levels),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Baselines {
    #[serde(default = "yes")]
    pub eae: bool,
    #[serde(default)]
    pub fsl_m: Option<usize>,
}

impl Default for Baselines {
    fn default() -> Self {
        Baselines { eae: true, fsl_m: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<PathBuf>,
}

/// Everything needed to run one hybrid preparation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub signal: SignalSpec,
    pub transform: TransformConfig,
    #[serde(default)]
    pub threshold: Option<ThresholdPolicy>,
    #[serde(default = "epsilon_default")]
    pub epsilon: f64,
    #[serde(default)]
    pub baselines: Baselines,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub sqsp: SqspStrategy,
}

impl ExperimentConfig {
    pub fn new(signal: SignalSpec, transform: TransformConfig, threshold: Option<ThresholdPolicy>) -> Self {
        ExperimentConfig {
            signal,
            transform,
            threshold,
            epsilon: epsilon_default(),
            baselines: Baselines::default(),
            output: OutputConfig::default(),
            sqsp: SqspStrategy::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Config(format!("epsilon must lie in (0, 1], got {}", self.epsilon)));
        }
        if let Some(t) = self.threshold {
            ThresholdPolicy::new(t.mode, t.value).map_err(|e| Error::Config(e.to_string()))?;
        }
        if let SignalSpec::Csv { path, .. } = &self.signal {
            if !path.exists() {
                return Err(Error::MissingFile(path.clone()));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    /// Loads a config file; relative CSV paths resolve against its directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
            _ => Error::Io(e),
        })?;
        let mut cfg = Self::from_toml_str(&text)?;
        if let Some(dir) = path.parent() {
            cfg.signal.rebase(dir);
        }
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
