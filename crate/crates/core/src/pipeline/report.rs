use std::io::Write;

use super::{ExperimentRecord, FslRecord, SweepCell, Table1Row, Table2Row};
use crate::Result;

pub fn format_cr(cr: f64) -> String {
    format!("{cr:.1}")
}

pub fn format_td(td: f64) -> String {
    format!("{td:.4}")
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn opt_ratio(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.1}")).unwrap_or_default()
}

const RECORD_HEADER: &str = "label,n,transform,levels,tau_mode,tau,d,cr,sqsp_cnot,sqsp_single,sqsp_depth,\
decompression_cnot,decompression_single,decompression_depth,total_cnot,total_single,total_depth,\
eae_cnot,eae_depth,cnot_reduction,depth_reduction,simulated_td,classical_td";

fn record_fields(r: &ExperimentRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.label,
        r.n,
        r.transform,
        r.levels,
        opt(r.tau_mode),
        opt(r.tau),
        r.d,
        format_cr(r.cr),
        r.sqsp.cnot,
        r.sqsp.single,
        r.sqsp.depth,
        r.decompression.cnot,
        r.decompression.single,
        r.decompression.depth,
        r.total_cnot,
        r.total_single,
        r.total_depth,
        opt(r.eae_cnot),
        opt(r.eae_depth),
        opt_ratio(r.cnot_reduction),
        opt_ratio(r.depth_reduction),
        format_td(r.simulated_td),
        format_td(r.classical_td),
    )
}

pub fn write_records_csv(w: &mut impl Write, records: &[ExperimentRecord]) -> Result<()> {
    writeln!(w, "{RECORD_HEADER}")?;
    for r in records {
        writeln!(w, "{}", record_fields(r))?;
    }
    Ok(())
}

/// Measured rows with reference columns appended; skipped rows are left out.
pub fn write_table1_csv(w: &mut impl Write, rows: &[Table1Row]) -> Result<()> {
    writeln!(
        w,
        "{RECORD_HEADER},ref_cr,ref_sqsp_cnot,ref_sqsp_depth,ref_decompression_cnot,ref_decompression_depth,\
ref_cnot_reduction,ref_depth_reduction,ref_td"
    )?;
    for row in rows {
        if let Table1Row::Measured { record, reference: x } = row {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                record_fields(record),
                format_cr(x.cr),
                x.sqsp_cnot,
                x.sqsp_depth,
                x.decompression_cnot,
                x.decompression_depth,
                x.cnot_reduction,
                x.depth_reduction,
                format_td(x.td)
            )?;
        }
    }
    Ok(())
}

fn fsl_fields(r: &FslRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.label,
        r.n,
        r.m,
        r.cnot,
        r.single,
        r.depth,
        format_td(r.simulated_td),
        format_td(r.classical_td)
    )
}

pub fn write_fsl_csv(w: &mut impl Write, rows: &[Table2Row]) -> Result<()> {
    writeln!(w, "label,n,m,cnot,single,depth,simulated_td,classical_td,ref_cnot,ref_depth,ref_td")?;
    for row in rows {
        if let Table2Row::Measured { record, reference } = row {
            writeln!(
                w,
                "{},{},{},{}",
                fsl_fields(record),
                reference.cnot,
                reference.depth,
                format_td(reference.td)
            )?;
        }
    }
    Ok(())
}

pub fn write_sweep_csv(w: &mut impl Write, cells: &[SweepCell]) -> Result<()> {
    writeln!(w, "L,tau,mean_td,mean_cr,std_cr,in_valid_regime")?;
    for c in cells {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            c.levels,
            c.tau,
            format_td(c.mean_td),
            format_cr(c.mean_cr),
            format_cr(c.std_cr),
            c.in_valid_regime
        )?;
    }
    Ok(())
}
