use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::signals::{ingest_waveform_csv_with, ColumnSelector, PadPosition, Signal};
use crate::statesim::trace_distance;
use crate::transforms::{classical_reconstruct, packet_dhwt, threshold_normalize, ThresholdMode, ThresholdPolicy};
use crate::{Error, Result};

pub const VALID_CR_MIN: f64 = 15.0;
pub const VALID_CR_MAX: f64 = 235.0;

/// Whether a compression ratio lies in the regime where sparse loading pays off.
pub fn in_valid_regime(cr: f64) -> bool {
    (VALID_CR_MIN..=VALID_CR_MAX).contains(&cr)
}

pub fn default_sweep_levels() -> Vec<usize> {
    (8..=14).collect()
}

pub fn default_sweep_taus() -> Vec<f64> {
    vec![0.001, 0.002, 0.003, 0.005, 0.0075, 0.01, 0.015, 0.02]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub levels: Vec<usize>,
    pub taus: Vec<f64>,
    pub mode: ThresholdMode,
    pub column: ColumnSelector,
    pub pad: PadPosition,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            levels: default_sweep_levels(),
            taus: default_sweep_taus(),
            mode: ThresholdMode::FractionOfMax,
            column: ColumnSelector::Name("PLETH".into()),
            pad: PadPosition::Tail,
        }
    }
}

/// Aggregate over recordings for one `(L, tau)` cell. `std_cr` is the
/// population standard deviation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub levels: usize,
    pub tau: f64,
    pub mean_td: f64,
    pub mean_cr: f64,
    pub std_cr: f64,
    pub in_valid_regime: bool,
    pub recordings: usize,
}

/// Recording files of a dataset directory, sorted by name. Files named
/// `*_Signals.csv` are preferred when present.
pub fn dataset_recordings(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::MissingFile(dir.to_path_buf()));
    }
    let mut csvs: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")))
        .collect();
    csvs.sort();
    let signals: Vec<PathBuf> = csvs
        .iter()
        .filter(|p| p.file_name().is_some_and(|n| n.to_string_lossy().ends_with("_Signals.csv")))
        .cloned()
        .collect();
    let files = if signals.is_empty() { csvs } else { signals };
    if files.is_empty() {
        return Err(Error::EmptyDataset(dir.to_path_buf()));
    }
    Ok(files)
}

fn cell_metrics(signal: &Signal, levels: usize, policy: ThresholdPolicy) -> Result<(f64, f64)> {
    let x = threshold_normalize(&packet_dhwt(signal, levels)?, policy)?;
    let recon = classical_reconstruct(&x)?;
    let td = trace_distance(signal.samples(), recon.samples())?;
    Ok((td, x.len() as f64 / x.retained as f64))
}

/// Classical sweep over `(L, tau)` for the given recordings.
pub fn sweep_signals(signals: &[Signal], levels: &[usize], taus: &[f64], mode: ThresholdMode) -> Result<Vec<SweepCell>> {
    if signals.is_empty() {
        return Err(Error::EmptyDataset(PathBuf::new()));
    }
    let mut cells = Vec::with_capacity(levels.len() * taus.len());
    for &l in levels {
        for &t in taus {
            cells.push((l, ThresholdPolicy::new(mode, t)?));
        }
    }
    let jobs: Vec<(usize, usize)> = (0..cells.len()).flat_map(|c| (0..signals.len()).map(move |s| (c, s))).collect();
    let results: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(c, s)| cell_metrics(&signals[s], cells[c].0, cells[c].1))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(cells.len());
    let k = signals.len() as f64;
    for (c, vals) in results.chunks(signals.len()).enumerate() {
        let mean_td = vals.iter().map(|v| v.0).sum::<f64>() / k;
        let mean_cr = vals.iter().map(|v| v.1).sum::<f64>() / k;
        let var = vals.iter().map(|v| (v.1 - mean_cr).powi(2)).sum::<f64>() / k;
        out.push(SweepCell {
            levels: cells[c].0,
            tau: cells[c].1.value,
            mean_td,
            mean_cr,
            std_cr: var.sqrt(),
            in_valid_regime: in_valid_regime(mean_cr),
            recordings: signals.len(),
        });
    }
    Ok(out)
}

pub fn sweep_ppg(cfg: &SweepConfig, dataset_dir: &Path) -> Result<Vec<SweepCell>> {
    let files = dataset_recordings(dataset_dir)?;
    let signals = files
        .par_iter()
        .map(|p| ingest_waveform_csv_with(p, &cfg.column, cfg.pad))
        .collect::<Result<Vec<_>>>()?;
    sweep_signals(&signals, &cfg.levels, &cfg.taus, cfg.mode)
}
