//! Browser bindings for the hybrid state preparation demo.
//!
//! Every export has a plain Rust counterpart returning `Result<_, String>`
//! so the logic can be exercised on native targets.

use hqsp::circuit::count;
use hqsp::pipeline::{run_on_signal, ExperimentConfig, SignalSpec, TransformConfig, DEFAULT_PIECEWISE_BLOCKS};
use hqsp::qsynth::{inverse_packet_qhwt, iqft};
use hqsp::statesim::trace_distance;
use hqsp::transforms::{classical_reconstruct, forward, threshold_normalize, ThresholdPolicy};
use wasm_bindgen::prelude::*;

const MAX_QUBITS: u32 = 14;

fn signal_spec(kind: &str, n: u32, seed: u32) -> Result<SignalSpec, String> {
    if !(3..=MAX_QUBITS).contains(&n) {
        return Err(format!("n must lie in 3..={MAX_QUBITS}, got {n}"));
    }
    let n = n as usize;
    Ok(match kind {
        "periodic" => {
            if n < 6 {
                return Err("periodic signal needs n >= 6".into());
            }
            SignalSpec::Periodic { n }
        }
        "piecewise" => SignalSpec::Piecewise { n, blocks: DEFAULT_PIECEWISE_BLOCKS },
        "sinc" => SignalSpec::Sinc { n, t_min: -10.0, t_max: 10.0 },
        "gaussian" => SignalSpec::Gaussian { n, mu: 0.0, sigma: 0.8, x_min: -5.0, x_max: 5.0 },
        "mixture" => SignalSpec::Mixture {
            n,
            seed: seed as u64,
            components: 12,
            noise_std: 0.001,
            x_min: -5.0,
            x_max: 5.0,
        },
        other => return Err(format!("unknown signal kind `{other}`")),
    })
}

fn transform(name: &str, levels: u32) -> Result<TransformConfig, String> {
    match name {
        "dft" => Ok(TransformConfig::dft()),
        "haar" => Ok(TransformConfig::haar(levels as usize)),
        other => Err(format!("unknown transform `{other}`")),
    }
}

fn policy(tau: f64) -> Result<Option<ThresholdPolicy>, String> {
    if tau == 0.0 {
        return Ok(None);
    }
    ThresholdPolicy::fraction_of_max(tau).map(Some).map_err(|e| e.to_string())
}

/// Result of one compress, load and decompress round.
#[wasm_bindgen]
#[derive(Clone, Debug)]
pub struct DemoResult {
    original: Vec<f64>,
    reconstruction: Vec<f64>,
    coefficients: Vec<f64>,
    pub d: u32,
    pub cr: f64,
    pub td: f64,
    pub sqsp_cx: u32,
    pub decompression_cx: u32,
    pub total_cx: u32,
    pub total_depth: u32,
    pub eae_cx: u32,
}

#[wasm_bindgen]
impl DemoResult {
    /// Real part of the normalized input signal.
    #[wasm_bindgen(getter)]
    pub fn original(&self) -> Vec<f64> {
        self.original.clone()
    }

    /// Real part of the simulated output state.
    #[wasm_bindgen(getter)]
    pub fn reconstruction(&self) -> Vec<f64> {
        self.reconstruction.clone()
    }

    /// Magnitudes of the retained transform coefficients.
    #[wasm_bindgen(getter)]
    pub fn coefficients(&self) -> Vec<f64> {
        self.coefficients.clone()
    }
}

pub fn run_demo(kind: &str, n: u32, transform_name: &str, levels: u32, tau: f64, seed: u32) -> Result<DemoResult, String> {
    let spec = signal_spec(kind, n, seed)?;
    let cfg = ExperimentConfig::new(spec, transform(transform_name, levels)?, policy(tau)?);
    let signal = cfg.signal.generate().map_err(|e| e.to_string())?;
    let x = forward(&signal, cfg.transform.descriptor()).map_err(|e| e.to_string())?;
    let xr = match cfg.threshold {
        Some(p) => threshold_normalize(&x, p).map_err(|e| e.to_string())?,
        None => x,
    };
    let e = run_on_signal(&cfg, signal).map_err(|e| e.to_string())?;
    let r = &e.record;
    Ok(DemoResult {
        original: e.signal.samples().iter().map(|z| z.re).collect(),
        reconstruction: e.simulated.iter().map(|z| z.re).collect(),
        coefficients: xr.coefficients.iter().map(|z| z.norm()).collect(),
        d: r.d as u32,
        cr: r.cr,
        td: r.simulated_td,
        sqsp_cx: r.sqsp.cnot as u32,
        decompression_cx: r.decompression.cnot as u32,
        total_cx: r.total_cnot as u32,
        total_depth: r.total_depth as u32,
        eae_cx: r.eae_cnot.unwrap_or(0) as u32,
    })
}

/// `[cnot, single, depth]` of the decompression circuit.
pub fn decompression_resources(n: u32, transform_name: &str, levels: u32) -> Result<Vec<u32>, String> {
    if !(1..=24).contains(&n) {
        return Err(format!("n must lie in 1..=24, got {n}"));
    }
    let c = match transform(transform_name, levels)? {
        t if t.levels == 0 => iqft(n as usize, true),
        t => inverse_packet_qhwt(n as usize, t.levels).map_err(|e| e.to_string())?,
    };
    let r = count(&c);
    Ok(vec![r.cnot_count as u32, r.single_qubit_count as u32, r.depth as u32])
}

/// Flattened `[tau, d, cr, td]` rows for each threshold fraction.
pub fn tau_sweep(kind: &str, n: u32, transform_name: &str, levels: u32, taus: &[f64], seed: u32) -> Result<Vec<f64>, String> {
    let spec = signal_spec(kind, n, seed)?;
    let signal = spec.generate().map_err(|e| e.to_string())?;
    let x = forward(&signal, transform(transform_name, levels)?.descriptor()).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(taus.len() * 4);
    for &tau in taus {
        let xr = match policy(tau)? {
            Some(p) => threshold_normalize(&x, p).map_err(|e| e.to_string())?,
            None => x.clone(),
        };
        let recon = classical_reconstruct(&xr).map_err(|e| e.to_string())?;
        let td = trace_distance(signal.samples(), recon.samples()).map_err(|e| e.to_string())?;
        out.extend([tau, xr.retained as f64, xr.len() as f64 / xr.retained as f64, td]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn compress(kind: &str, n: u32, transform_name: &str, levels: u32, tau: f64, seed: u32) -> Result<DemoResult, JsError> {
    run_demo(kind, n, transform_name, levels, tau, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn resources(n: u32, transform_name: &str, levels: u32) -> Result<Vec<u32>, JsError> {
    decompression_resources(n, transform_name, levels).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep(kind: &str, n: u32, transform_name: &str, levels: u32, taus: Vec<f64>, seed: u32) -> Result<Vec<f64>, JsError> {
    tau_sweep(kind, n, transform_name, levels, &taus, seed).map_err(|e| JsError::new(&e))
}
