use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::{fsl_baseline, run_experiment, ExperimentConfig, ExperimentRecord, SignalSpec, TransformConfig};
use crate::transforms::ThresholdPolicy;
use crate::Result;

/// Reference resource figures for a `table1` row.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Reference {
    pub cr: f64,
    pub sqsp_cnot: usize,
    pub sqsp_depth: usize,
    pub decompression_cnot: usize,
    pub decompression_depth: usize,
    pub cnot_reduction: f64,
    pub depth_reduction: f64,
    pub td: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table2Reference {
    pub cnot: usize,
    pub depth: usize,
    pub td: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Table1Row {
    Measured { record: ExperimentRecord, reference: Table1Reference },
    Skipped { label: String, warning: String },
}

/// FSL baseline result for one signal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FslRecord {
    pub label: String,
    pub n: usize,
    pub m: usize,
    pub cnot: usize,
    pub single: usize,
    pub depth: usize,
    pub simulated_td: f64,
    pub classical_td: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Table2Row {
    Measured { record: FslRecord, reference: Table2Reference },
    Skipped { label: String, warning: String },
}

/// Location of a PPG recording.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PpgSource {
    pub path: PathBuf,
    pub column: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table1Options {
    pub ppg: Option<PpgSource>,
    pub skip_ppg: bool,
    pub mixture_seed: u64,
}

const PPG_TAU: f64 = 0.0041;

fn ppg_spec(src: &PpgSource) -> SignalSpec {
    SignalSpec::Csv { path: src.path.clone(), column: src.column.clone(), pad: Default::default() }
}

fn frac(v: f64) -> Option<ThresholdPolicy> {
    Some(ThresholdPolicy::fraction_of_max(v).expect("valid fraction"))
}

/// Configurations of the `table1` benchmark, PPG last when a source is given.
pub fn table1_configs(opts: &Table1Options) -> Vec<(String, Option<ExperimentConfig>, Table1Reference)> {
    let r = |cr, sc, sd, dc, dd, cx, dx, td| Table1Reference {
        cr,
        sqsp_cnot: sc,
        sqsp_depth: sd,
        decompression_cnot: dc,
        decompression_depth: dd,
        cnot_reduction: cx,
        depth_reduction: dx,
        td,
    };
    let mut rows = vec![
        (
            "sinc".to_string(),
            Some(ExperimentConfig::new(SignalSpec::sinc_benchmark(), TransformConfig::haar(10), frac(0.009))),
            r(298.0, 494, 760, 285, 70, 42.0, 79.0, 0.035),
        ),
        (
            "gaussian".to_string(),
            Some(ExperimentConfig::new(SignalSpec::gaussian_benchmark(), TransformConfig::haar(13), frac(0.006))),
            r(745.0, 210, 470, 312, 79, 63.0, 119.0, 0.010),
        ),
        (
            "mixture".to_string(),
            Some(ExperimentConfig::new(
                SignalSpec::mixture_benchmark(opts.mixture_seed),
                TransformConfig::haar(12),
                frac(0.005),
            )),
            r(328.0, 416, 677, 306, 76, 45.0, 87.0, 0.017),
        ),
    ];
    if !opts.skip_ppg {
        let cfg = opts.ppg.as_ref().map(|src| {
            ExperimentConfig::new(
                ppg_spec(src),
                TransformConfig::haar(13),
                Some(ThresholdPolicy::absolute(PPG_TAU).expect("valid")),
            )
        });
        rows.push(("ppg".to_string(), cfg, r(20.0, 17000, 25000, 351, 82, 4.0, 6.0, 0.069)));
    }
    rows
}

pub fn run_table1(opts: &Table1Options) -> Result<Vec<Table1Row>> {
    let mut out = Vec::new();
    for (label, cfg, reference) in table1_configs(opts) {
        match cfg {
            Some(cfg) => {
                let mut record = run_experiment(&cfg)?.record;
                record.label = label;
                out.push(Table1Row::Measured { record, reference });
            }
            None => out.push(Table1Row::Skipped {
                label,
                warning: "PPG dataset not configured; row skipped".into(),
            }),
        }
    }
    Ok(out)
}

/// Signals and truncation parameters of the `table2` benchmark.
pub fn table2_configs(opts: &Table1Options) -> Vec<(String, Option<(SignalSpec, usize)>, Table2Reference)> {
    let r = |cnot, depth, td| Table2Reference { cnot, depth, td };
    let mut rows = vec![
        ("periodic".to_string(), Some((SignalSpec::Periodic { n: 8 }, 7)), r(576, 1028, 0.0377)),
        (
            "piecewise".to_string(),
            Some((SignalSpec::Piecewise { n: 10, blocks: super::config::DEFAULT_PIECEWISE_BLOCKS }, 7)),
            r(615, 1044, 0.0869),
        ),
        ("sinc".to_string(), Some((SignalSpec::sinc_benchmark(), 6)), r(491, 584, 0.0235)),
        ("gaussian".to_string(), Some((SignalSpec::gaussian_benchmark(), 5)), r(364, 338, 0.0089)),
        ("mixture".to_string(), Some((SignalSpec::mixture_benchmark(opts.mixture_seed), 6)), r(491, 584, 0.0104)),
    ];
    if !opts.skip_ppg {
        rows.push(("ppg".to_string(), opts.ppg.as_ref().map(|s| (ppg_spec(s), 12)), r(17000, 33000, 0.0692)));
    }
    rows
}

pub fn run_table2(opts: &Table1Options) -> Result<Vec<Table2Row>> {
    let mut out = Vec::new();
    for (label, spec, reference) in table2_configs(opts) {
        match spec {
            Some((spec, m)) => {
                let mut record = fsl_baseline(&spec.generate()?, m)?;
                record.label = label;
                out.push(Table2Row::Measured { record, reference });
            }
            None => out.push(Table2Row::Skipped {
                label,
                warning: "PPG dataset not configured; row skipped".into(),
            }),
        }
    }
    Ok(out)
}
