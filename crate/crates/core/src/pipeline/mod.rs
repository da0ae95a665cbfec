//! End-to-end experiments, benchmark tables and the PPG sweep.

mod config;
mod report;
mod sweep;
mod tables;

use serde::{Deserialize, Serialize};

use crate::circuit::{count, count_stages, Circuit, StageCost};
use crate::loaders::{dense_complex_load, eae_real_complex, sqsp_with, SparseState};
use crate::qsynth::{fsl_circuit, fsl_coefficients, fsl_reconstruct, inverse_packet_qhwt, iqft};
use crate::signals::Signal;
use crate::statesim::{simulate, trace_distance};
use crate::transforms::{
    classical_reconstruct, compression_ratio, forward, threshold_normalize, ThresholdMode, TransformKind,
};
use crate::{Error, Result};

pub use config::{Baselines, DEFAULT_PIECEWISE_BLOCKS, ExperimentConfig, OutputConfig, SignalSpec, TransformConfig};
pub use report::{
    format_cr, format_td, write_fsl_csv, write_records_csv, write_sweep_csv, write_table1_csv,
};
pub use sweep::{
    dataset_recordings, default_sweep_levels, default_sweep_taus, in_valid_regime, sweep_ppg, sweep_signals, SweepCell,
    SweepConfig, VALID_CR_MAX, VALID_CR_MIN,
};
pub use tables::{
    run_table1, run_table2, table1_configs, table2_configs, FslRecord, PpgSource, Table1Options, Table1Reference,
    Table1Row, Table2Reference, Table2Row,
};

/// Outcome of one hybrid preparation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub label: String,
    pub n: usize,
    pub transform: TransformKind,
    pub levels: usize,
    pub tau_mode: Option<ThresholdMode>,
    pub tau: Option<f64>,
    pub d: usize,
    pub cr: f64,
    pub sqsp: StageCost,
    pub decompression: StageCost,
    pub total_cnot: usize,
    pub total_single: usize,
    pub total_depth: usize,
    pub eae_cnot: Option<usize>,
    pub eae_depth: Option<usize>,
    pub cnot_reduction: Option<f64>,
    pub depth_reduction: Option<f64>,
    /// Trace distance between the input signal and the simulated state.
    pub simulated_td: f64,
    /// Trace distance between the input signal and the classical reconstruction.
    pub classical_td: f64,
    /// Trace distance between the simulated state and the classical reconstruction.
    pub agreement_td: f64,
    pub fsl: Option<FslRecord>,
}

/// Circuit, record and the states behind the record.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub circuit: Circuit,
    pub record: ExperimentRecord,
    pub signal: Signal,
    pub reconstruction: Signal,
    pub simulated: Vec<num_complex::Complex64>,
}

fn decompression_circuit(cfg: &TransformConfig, n: usize) -> Result<Circuit> {
    match cfg.kind {
        TransformKind::Dft => Ok(iqft(n, true)),
        TransformKind::PacketHaar => inverse_packet_qhwt(n, cfg.levels),
    }
}

/// FSL baseline for `signal` with truncation `m`.
pub fn fsl_baseline(signal: &Signal, m: usize) -> Result<FslRecord> {
    let n = signal.n();
    let coeffs = fsl_coefficients(signal, m)?;
    let circuit = fsl_circuit(&coeffs, n, m)?;
    let report = count(&circuit);
    let state = simulate(&circuit)?;
    let classical = fsl_reconstruct(&coeffs, n, m)?;
    Ok(FslRecord {
        label: signal.label.clone(),
        n,
        m,
        cnot: report.cnot_count,
        single: report.single_qubit_count,
        depth: report.depth,
        simulated_td: trace_distance(signal.samples(), &state.amplitudes)?,
        classical_td: trace_distance(signal.samples(), classical.samples())?,
    })
}

/// Runs the hybrid pipeline on an explicit signal without the tolerance check.
pub fn run_on_signal(cfg: &ExperimentConfig, signal: Signal) -> Result<Experiment> {
    let n = signal.n();
    let descriptor = cfg.transform.descriptor();
    descriptor.validate(n)?;
    let x = forward(&signal, descriptor)?;
    let xr = match cfg.threshold {
        Some(p) => threshold_normalize(&x, p)?,
        None => x,
    };
    let sparse = SparseState::from_compressed(&xr)?;
    let load = sqsp_with(&sparse, cfg.sqsp);
    let dec = decompression_circuit(&cfg.transform, n)?;
    let mut circuit = load.widen(n)?;
    circuit.append(&dec)?;
    let report = count_stages(&[("sqsp", &load), ("decompression", &dec)]);

    let simulated = simulate(&circuit)?.amplitudes;
    let reconstruction = classical_reconstruct(&xr)?;
    let simulated_td = trace_distance(signal.samples(), &simulated)?;
    let classical_td = trace_distance(signal.samples(), reconstruction.samples())?;
    let agreement_td = trace_distance(&simulated, reconstruction.samples())?;

    let (eae_cnot, eae_depth) = if cfg.baselines.eae {
        let eae = if signal.is_real() {
            eae_real_complex(signal.samples())?
        } else {
            dense_complex_load(signal.samples())?
        };
        let r = count(&eae);
        (Some(r.cnot_count), Some(r.depth))
    } else {
        (None, None)
    };
    let fsl = cfg.baselines.fsl_m.map(|m| fsl_baseline(&signal, m)).transpose()?;
    let ratio = |base: Option<usize>, ours: usize| base.map(|b| b as f64 / ours.max(1) as f64);

    let record = ExperimentRecord {
        label: signal.label.clone(),
        n,
        transform: descriptor.kind,
        levels: descriptor.levels,
        tau_mode: cfg.threshold.map(|t| t.mode),
        tau: cfg.threshold.map(|t| t.value),
        d: xr.retained,
        cr: compression_ratio(xr.len(), xr.retained)?,
        sqsp: report.stage_breakdown["sqsp"],
        decompression: report.stage_breakdown["decompression"],
        total_cnot: report.cnot_count,
        total_single: report.single_qubit_count,
        total_depth: report.depth,
        eae_cnot,
        eae_depth,
        cnot_reduction: ratio(eae_cnot, report.cnot_count),
        depth_reduction: ratio(eae_depth, report.depth),
        simulated_td,
        classical_td,
        agreement_td,
        fsl,
    };
    Ok(Experiment { circuit, record, signal, reconstruction, simulated })
}

/// Runs the pipeline described by `cfg` without the tolerance check.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Experiment> {
    cfg.validate()?;
    run_on_signal(cfg, cfg.signal.generate()?)
}

/// Runs the pipeline and fails when the simulated trace distance reaches
/// `cfg.epsilon`.
pub fn hybrid_prepare(cfg: &ExperimentConfig) -> Result<(Circuit, ExperimentRecord)> {
    let e = run_experiment(cfg)?;
    check_tolerance(&e.record, cfg.epsilon)?;
    Ok((e.circuit, e.record))
}

pub fn check_tolerance(record: &ExperimentRecord, epsilon: f64) -> Result<()> {
    if record.simulated_td >= epsilon {
        return Err(Error::ToleranceExceeded { achieved: record.simulated_td, epsilon });
    }
    Ok(())
}
