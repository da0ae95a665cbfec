use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hqsp::circuit::{count, decompose, export, import, Circuit, ResourceReport, TextFormat};
use hqsp::io::{
    read_signal_bin, read_signal_csv, read_sparse_csv, write_compressed_csv, write_signal_bin, write_signal_csv,
    write_state_csv,
};
use hqsp::loaders::{dense_complex_load, eae_real_complex, sqsp_with, SparseState, SqspStrategy};
use hqsp::pipeline::{
    format_cr, format_td, run_experiment, run_table1, run_table2, sweep_ppg, write_fsl_csv, write_records_csv,
    write_sweep_csv, write_table1_csv, check_tolerance, ExperimentConfig, PpgSource, SignalSpec, SweepConfig,
    Table1Options, Table1Row, Table2Row, DEFAULT_PIECEWISE_BLOCKS,
};
use hqsp::qsynth::{fsl_circuit, fsl_coefficients, inverse_packet_qhwt, iqft};
use hqsp::signals::{ColumnSelector, Signal};
use hqsp::statesim::{simulate, trace_distance};
use hqsp::transforms::{
    compression_ratio, forward, threshold_normalize, ThresholdMode, ThresholdPolicy, TransformDescriptor,
};
use hqsp::Error;

#[derive(Parser)]
#[command(name = "hqsp", version, about = "Hybrid classical-quantum state preparation")]
struct Cli {
    /// Seed for randomized signals.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark signal.
    GenSignal(GenSignalArgs),
    /// Transform, threshold and renormalize a signal.
    Compress(CompressArgs),
    /// Synthesize a loader or decompression circuit.
    Synth(SynthArgs),
    /// Simulate a circuit from |0...0>.
    Simulate(SimulateArgs),
    /// Run a benchmark table or a configured experiment.
    Run(RunArgs),
    /// Classical (L, tau) sweep over a directory of recordings.
    SweepPpg(SweepArgs),
    /// Convert a circuit between text formats.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalKind {
    Periodic,
    Piecewise,
    Sinc,
    Gaussian,
    Mixture,
}

#[derive(Args)]
struct GenSignalArgs {
    #[arg(value_enum)]
    kind: SignalKind,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long)]
    components: Option<usize>,
    #[arg(long)]
    noise_std: Option<f64>,
    /// Write the little-endian binary layout instead of CSV.
    #[arg(long)]
    binary: bool,
}

#[derive(Args)]
struct CompressArgs {
    /// Signal CSV or `.bin` file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = TransformArg::Haar)]
    transform: TransformArg,
    #[arg(long, default_value_t = 1)]
    levels: usize,
    #[arg(long, conflicts_with = "tau_abs")]
    tau_frac: Option<f64>,
    #[arg(long)]
    tau_abs: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformArg {
    Dft,
    Haar,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plan {
    Sqsp,
    QhwtInv,
    Iqft,
    Fsl,
    Eae,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, value_enum)]
    plan: Plan,
    /// Sparse CSV for `sqsp`, signal file for `fsl` and `eae`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    levels: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long)]
    no_swaps: bool,
    /// Print the resource report instead of the circuit.
    #[arg(long)]
    report: bool,
    /// Circuit text format written to `--out`.
    #[arg(long, default_value = "listing")]
    emit: String,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    circuit: PathBuf,
    /// Signal to compare against; prints the trace distance to stderr.
    #[arg(long)]
    compare: Option<PathBuf>,
    /// Fail with exit code 1 when the trace distance reaches this value.
    #[arg(long, requires = "compare")]
    epsilon: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RunTarget {
    Table1,
    Table2,
    Experiment,
}

#[derive(Args)]
struct RunArgs {
    #[arg(value_enum)]
    target: RunTarget,
    /// Rows to leave out (`ppg`).
    #[arg(long)]
    skip: Vec<String>,
    #[arg(long)]
    ppg_file: Option<PathBuf>,
    #[arg(long, default_value = "PLETH")]
    ppg_column: String,
    /// TOML experiment configuration for `run experiment`.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    dataset: PathBuf,
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    taus: Option<Vec<f64>>,
    #[arg(long, default_value = "fraction")]
    tau_mode: String,
    #[arg(long, default_value = "PLETH")]
    column: String,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    to: String,
    /// Lower every gate to single-qubit gates and CX first.
    #[arg(long)]
    decompose: bool,
}

struct Ctx {
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Format,
}

impl Ctx {
    fn writer(&self) -> hqsp::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn json(&self, value: &serde_json::Value) -> hqsp::Result<()> {
        let mut w = self.writer()?;
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn read_signal(path: &Path) -> hqsp::Result<Signal> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("bin") => read_signal_bin(path),
        _ => read_signal_csv(path),
    }
}

fn circuit_format(path: &Path) -> TextFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some("qasm") => TextFormat::Qasm,
        _ => TextFormat::Listing,
    }
}

fn read_circuit(path: &Path) -> hqsp::Result<Circuit> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    import(&text, circuit_format(path))
}

fn gen_signal(ctx: &Ctx, a: &GenSignalArgs) -> hqsp::Result<()> {
    let spec = match a.kind {
        SignalKind::Periodic => SignalSpec::Periodic { n: a.n },
        SignalKind::Piecewise => SignalSpec::Piecewise { n: a.n, blocks: DEFAULT_PIECEWISE_BLOCKS },
        SignalKind::Sinc => {
            let SignalSpec::Sinc { t_min, t_max, .. } = SignalSpec::sinc_benchmark() else { unreachable!() };
            SignalSpec::Sinc { n: a.n, t_min: a.t_min.unwrap_or(t_min), t_max: a.t_max.unwrap_or(t_max) }
        }
        SignalKind::Gaussian => {
            let SignalSpec::Gaussian { mu, sigma, x_min, x_max, .. } = SignalSpec::gaussian_benchmark() else {
                unreachable!()
            };
            SignalSpec::Gaussian {
                n: a.n,
                mu: a.mu.unwrap_or(mu),
                sigma: a.sigma.unwrap_or(sigma),
                x_min: a.x_min.unwrap_or(x_min),
                x_max: a.x_max.unwrap_or(x_max),
            }
        }
        SignalKind::Mixture => {
            let SignalSpec::Mixture { components, noise_std, x_min, x_max, .. } = SignalSpec::mixture_benchmark(0)
            else {
                unreachable!()
            };
            SignalSpec::Mixture {
                n: a.n,
                seed: ctx.seed.unwrap_or(0),
                components: a.components.unwrap_or(components),
                noise_std: a.noise_std.unwrap_or(noise_std),
                x_min: a.x_min.unwrap_or(x_min),
                x_max: a.x_max.unwrap_or(x_max),
            }
        }
    };
    let s = spec.generate()?;
    let mut w = ctx.writer()?;
    if a.binary {
        write_signal_bin(&mut w, &s)?;
    } else if ctx.format == Format::Json {
        let re: Vec<f64> = s.samples().iter().map(|z| z.re).collect();
        let im: Vec<f64> = s.samples().iter().map(|z| z.im).collect();
        serde_json::to_writer(&mut w, &json!({ "label": s.label, "n": s.n(), "re": re, "im": im }))?;
        writeln!(w)?;
    } else {
        write_signal_csv(&mut w, &s)?;
    }
    w.flush()?;
    Ok(())
}

fn compress(ctx: &Ctx, a: &CompressArgs) -> hqsp::Result<()> {
    let s = read_signal(&a.input)?;
    let descriptor = match a.transform {
        TransformArg::Dft => TransformDescriptor::dft(),
        TransformArg::Haar => TransformDescriptor::packet_haar(a.levels),
    };
    descriptor.validate(s.n())?;
    let policy = match (a.tau_frac, a.tau_abs) {
        (Some(f), _) => Some(ThresholdPolicy::fraction_of_max(f)?),
        (_, Some(t)) => Some(ThresholdPolicy::absolute(t)?),
        _ => None,
    };
    let x = forward(&s, descriptor)?;
    let x = match policy {
        Some(p) => threshold_normalize(&x, p)?,
        None => x,
    };
    let cr = compression_ratio(x.len(), x.retained)?;
    eprintln!("n={} d={} cr={}", s.n(), x.retained, format_cr(cr));
    match ctx.format {
        Format::Csv => {
            let mut w = ctx.writer()?;
            write_compressed_csv(&mut w, &x)?;
            w.flush()?;
        }
        Format::Json => {
            let entries: Vec<_> = x.nonzeros().into_iter().map(|(i, z)| json!([i, z.re, z.im])).collect();
            ctx.json(&json!({
                "n": s.n(),
                "transform": descriptor.kind.to_string(),
                "levels": descriptor.levels,
                "tau_mode": policy.map(|p| p.mode.to_string()),
                "tau": policy.map(|p| p.value),
                "d": x.retained,
                "cr": cr,
                "entries": entries,
            }))?;
        }
    }
    Ok(())
}

fn synth(ctx: &Ctx, a: &SynthArgs) -> hqsp::Result<()> {
    let need_input = || a.input.as_deref().ok_or_else(|| usage("this plan needs --input"));
    let circuit = match a.plan {
        Plan::Sqsp => {
            let (h, entries) = read_sparse_csv(need_input()?)?;
            let state = SparseState::normalized(h.n, entries)?;
            sqsp_with(&state, a.strategy.parse::<SqspStrategy>()?)
        }
        Plan::QhwtInv => {
            let n = a.n.ok_or_else(|| usage("qhwt-inv needs --n"))?;
            let levels = a.levels.ok_or_else(|| usage("qhwt-inv needs --levels"))?;
            inverse_packet_qhwt(n, levels)?
        }
        Plan::Iqft => {
            let n = a.n.ok_or_else(|| usage("iqft needs --n"))?;
            if n == 0 {
                return Err(usage("iqft needs n >= 1"));
            }
            iqft(n, !a.no_swaps)
        }
        Plan::Fsl => {
            let s = read_signal(need_input()?)?;
            let m = a.m.ok_or_else(|| usage("fsl needs --m"))?;
            fsl_circuit(&fsl_coefficients(&s, m)?, s.n(), m)?
        }
        Plan::Eae => {
            let s = read_signal(need_input()?)?;
            if s.is_real() {
                eae_real_complex(s.samples())?
            } else {
                dense_complex_load(s.samples())?
            }
        }
    };
    if a.report {
        print_report(ctx, &count(&circuit))?;
        return Ok(());
    }
    let text = export(&circuit, a.emit.parse()?)?;
    let mut w = ctx.writer()?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn print_report(ctx: &Ctx, r: &ResourceReport) -> hqsp::Result<()> {
    match ctx.format {
        Format::Json => ctx.json(&serde_json::to_value(r)?),
        Format::Csv => {
            let mut w = ctx.writer()?;
            writeln!(w, "cnot,single,depth")?;
            writeln!(w, "{},{},{}", r.cnot_count, r.single_qubit_count, r.depth)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn simulate_cmd(ctx: &Ctx, a: &SimulateArgs) -> hqsp::Result<()> {
    let c = read_circuit(&a.circuit)?;
    let state = simulate(&c)?;
    match ctx.format {
        Format::Csv => {
            let mut w = ctx.writer()?;
            write_state_csv(&mut w, &state.amplitudes)?;
            w.flush()?;
        }
        Format::Json => {
            let amps: Vec<_> = state.amplitudes.iter().map(|z| json!([z.re, z.im])).collect();
            ctx.json(&json!({ "n": c.n(), "amplitudes": amps }))?;
        }
    }
    if let Some(path) = &a.compare {
        let target = read_signal(path)?;
        let td = trace_distance(target.samples(), &state.amplitudes)?;
        eprintln!("td={}", format_td(td));
        if let Some(eps) = a.epsilon {
            if td >= eps {
                return Err(Error::ToleranceExceeded { achieved: td, epsilon: eps });
            }
        }
    }
    Ok(())
}

fn table_options(ctx: &Ctx, a: &RunArgs) -> hqsp::Result<Table1Options> {
    let mut skip_ppg = false;
    for s in &a.skip {
        match s.to_ascii_lowercase().as_str() {
            "ppg" => skip_ppg = true,
            other => return Err(usage(format!("unknown row to skip: {other}"))),
        }
    }
    Ok(Table1Options {
        ppg: a.ppg_file.as_ref().map(|p| PpgSource { path: p.clone(), column: a.ppg_column.clone() }),
        skip_ppg,
        mixture_seed: ctx.seed.unwrap_or(0),
    })
}

fn run(ctx: &Ctx, a: &RunArgs) -> hqsp::Result<()> {
    match a.target {
        RunTarget::Table1 => {
            let rows = run_table1(&table_options(ctx, a)?)?;
            for r in &rows {
                if let Table1Row::Skipped { label, warning } = r {
                    eprintln!("warning: {label}: {warning}");
                }
            }
            match ctx.format {
                Format::Json => ctx.json(&serde_json::to_value(&rows)?),
                Format::Csv => {
                    let mut w = ctx.writer()?;
                    write_table1_csv(&mut w, &rows)?;
                    w.flush()?;
                    Ok(())
                }
            }
        }
        RunTarget::Table2 => {
            let rows = run_table2(&table_options(ctx, a)?)?;
            for r in &rows {
                if let Table2Row::Skipped { label, warning } = r {
                    eprintln!("warning: {label}: {warning}");
                }
            }
            match ctx.format {
                Format::Json => ctx.json(&serde_json::to_value(&rows)?),
                Format::Csv => {
                    let mut w = ctx.writer()?;
                    write_fsl_csv(&mut w, &rows)?;
                    w.flush()?;
                    Ok(())
                }
            }
        }
        RunTarget::Experiment => {
            let path = a.config.as_deref().ok_or_else(|| usage("run experiment needs --config"))?;
            let mut cfg = ExperimentConfig::from_file(path)?;
            if let (Some(seed), SignalSpec::Mixture { seed: s, .. }) = (ctx.seed, &mut cfg.signal) {
                *s = seed;
            }
            let e = run_experiment(&cfg)?;
            let out = match (&ctx.out, &cfg.output.dir) {
                (Some(p), _) => Some(p.clone()),
                (None, Some(dir)) => {
                    std::fs::create_dir_all(dir)?;
                    let ext = if ctx.format == Format::Json { "json" } else { "csv" };
                    Some(dir.join(format!("{}.{ext}", e.record.label)))
                }
                _ => None,
            };
            let sub = Ctx { seed: ctx.seed, out, format: ctx.format };
            match ctx.format {
                Format::Json => sub.json(&serde_json::to_value(&e.record)?)?,
                Format::Csv => {
                    let mut w = sub.writer()?;
                    write_records_csv(&mut w, std::slice::from_ref(&e.record))?;
                    w.flush()?;
                }
            }
            check_tolerance(&e.record, cfg.epsilon)
        }
    }
}

fn sweep(ctx: &Ctx, a: &SweepArgs) -> hqsp::Result<()> {
    let mut cfg = SweepConfig {
        mode: a.tau_mode.parse::<ThresholdMode>()?,
        column: a.column.parse::<ColumnSelector>().map_err(|_| usage("bad column"))?,
        ..Default::default()
    };
    if let Some(l) = &a.levels {
        cfg.levels = l.clone();
    }
    if let Some(t) = &a.taus {
        cfg.taus = t.clone();
    }
    let cells = sweep_ppg(&cfg, &a.dataset)?;
    match ctx.format {
        Format::Json => ctx.json(&serde_json::to_value(&cells)?),
        Format::Csv => {
            let mut w = ctx.writer()?;
            write_sweep_csv(&mut w, &cells)?;
            w.flush()?;
            Ok(())
        }
    }
}

fn export_cmd(ctx: &Ctx, a: &ExportArgs) -> hqsp::Result<()> {
    let mut c = read_circuit(&a.circuit)?;
    if a.decompose {
        c = decompose(&c);
    }
    let text = export(&c, a.to.parse()?)?;
    let mut w = ctx.writer()?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ToleranceExceeded { .. } => 1,
        e if e.is_io() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { seed: cli.seed, out: cli.out, format: cli.format };
    let result = match &cli.command {
        Command::GenSignal(a) => gen_signal(&ctx, a),
        Command::Compress(a) => compress(&ctx, a),
        Command::Synth(a) => synth(&ctx, a),
        Command::Simulate(a) => simulate_cmd(&ctx, a),
        Command::Run(a) => run(&ctx, a),
        Command::SweepPpg(a) => sweep(&ctx, a),
        Command::Export(a) => export_cmd(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
