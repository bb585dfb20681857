//! Command-line front end: configuration handling, the five subcommands and
//! their report and CSV output.
//!
//! Exit codes: 0 on success with a stable verdict, 1 on any usage or
//! configuration error, 2 when an analysis completes with a verdict other
//! than stable.

pub mod config;
pub mod csv;
pub mod report;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rlcm::analysis::{classify_stability, StabilityClass, DEFAULT_STABILITY_TOL};
use rlcm::circuits::{build, CircuitParams, Topology};
use rlcm::fmt_sig;
use rlcm::lin_small::eigenvalues;
use rlcm::memristor::{loop_areas_per_period, run_hysteresis, steady_loop_area, SineDrive};
use rlcm::transient::{impulse_response, metrics, step_response, Method, ResponseKind};

use config::{MemristorSection, MethodName, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_UNSTABLE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rlcm",
    version,
    about = "Stability and transient analysis of memristor-augmented RLC circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, stability verdict, transfer function and pole-zero map.
    Analyze(Common),
    /// Step response: CSV waveform and transient metrics.
    Step(Common),
    /// Impulse response: CSV waveform and transient metrics.
    Impulse(Common),
    /// Sinusoidally driven memristor: i-v loop CSV and loop areas.
    Hysteresis(HysteresisArgs),
    /// Stability across a log-spaced range of one component.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Named circuit (paper-series, paper-parallel).
    #[arg(long)]
    pub preset: Option<String>,
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_topology)]
    pub topology: Option<Topology>,
    /// Resistance in ohms.
    #[arg(long)]
    pub r: Option<f64>,
    /// Inductance in henries.
    #[arg(long)]
    pub l: Option<f64>,
    /// Capacitance in farads.
    #[arg(long)]
    pub c: Option<f64>,
    /// Memristance operating point in ohms.
    #[arg(long)]
    pub rm: Option<f64>,
    /// Sample period in seconds.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Simulated time in seconds.
    #[arg(long = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long, value_parser = parse_method)]
    pub method: Option<Method>,
    /// Output file for CSV data.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Args)]
pub struct HysteresisArgs {
    #[command(flatten)]
    pub common: Common,
    /// Current amplitude in amperes.
    #[arg(long, default_value_t = 1e-4)]
    pub amplitude: f64,
    /// Drive frequency in hertz; repeat for several runs.
    #[arg(long = "freq", default_values_t = [1.0])]
    pub freqs: Vec<f64>,
    #[arg(long, default_value_t = 3)]
    pub periods: usize,
    #[arg(long = "steps-per-period", default_value_t = 1000)]
    pub steps_per_period: usize,
    /// Initial doped width in metres (default: a tenth of the device width).
    #[arg(long)]
    pub w0: Option<f64>,
    /// Use the default drift parameters when the config has no memristor section.
    #[arg(long = "memristor-defaults")]
    pub memristor_defaults: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    R,
    L,
    C,
    #[value(name = "r_m")]
    RM,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub param: SweepParam,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, default_value_t = 25)]
    pub count: usize,
}

fn parse_topology(s: &str) -> Result<Topology, String> {
    s.parse().map_err(|e: rlcm::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: rlcm::Error| e.to_string())
}

fn require_positive(field: &str, v: f64) -> anyhow::Result<()> {
    if !(v.is_finite() && v > 0.0) {
        bail!("invalid parameter `{field}`: must be finite and strictly positive, got {v}");
    }
    Ok(())
}

/// Merges the config file (if any) with the command-line overrides.
pub fn effective_config(args: &Common) -> anyhow::Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(name) = &args.preset {
        cfg.preset = Some(name.clone());
    }
    let overrides = [("r", args.r), ("l", args.l), ("c", args.c), ("rm", args.rm)];
    for (field, v) in overrides {
        if let Some(v) = v {
            require_positive(field, v)?;
        }
    }
    let any_component = overrides.iter().any(|(_, v)| v.is_some());
    if any_component || args.topology.is_some() {
        cfg.materialize_preset()?;
    }
    if let Some(t) = args.topology {
        cfg.topology = Some(t.into());
    }
    if any_component {
        let comp = match cfg.components {
            Some(c) => c,
            None => {
                let missing: Vec<&str> = overrides
                    .iter()
                    .filter(|(_, v)| v.is_none())
                    .map(|(n, _)| *n)
                    .collect();
                if !missing.is_empty() {
                    bail!(
                        "explicit components need --r, --l, --c and --rm; missing {}",
                        missing.join(", ")
                    );
                }
                config::Components {
                    r_ohm: 0.0,
                    l_henry: 0.0,
                    c_farad: 0.0,
                    r_m_ohm: 0.0,
                }
            }
        };
        cfg.components = Some(config::Components {
            r_ohm: args.r.unwrap_or(comp.r_ohm),
            l_henry: args.l.unwrap_or(comp.l_henry),
            c_farad: args.c.unwrap_or(comp.c_farad),
            r_m_ohm: args.rm.unwrap_or(comp.r_m_ohm),
        });
    }
    if let Some(dt) = args.dt {
        cfg.sim.dt_s = dt;
    }
    if let Some(t) = args.t_end {
        cfg.sim.t_end_s = t;
    }
    if let Some(m) = args.method {
        cfg.sim.method = match m {
            Method::ZohExact => MethodName::Zoh,
            Method::Rk4 => MethodName::Rk4,
        };
    }
    if let Some(out) = &args.out {
        cfg.output_path = Some(out.clone());
    }
    Ok(cfg)
}

/// Runs one subcommand, writing the report to `out`, and returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<u8> {
    let common = match &cli.command {
        Command::Analyze(c) | Command::Step(c) | Command::Impulse(c) => c,
        Command::Hysteresis(h) => &h.common,
        Command::Sweep(s) => &s.common,
    };
    let cfg = effective_config(common)?;
    if common.dump_config {
        writeln!(out, "{}", cfg.to_json())?;
        return Ok(EXIT_OK);
    }
    match &cli.command {
        Command::Analyze(_) => cmd_analyze(&cfg, out),
        Command::Step(_) => cmd_response(&cfg, ResponseKind::Step, out),
        Command::Impulse(_) => cmd_response(&cfg, ResponseKind::Impulse, out),
        Command::Hysteresis(h) => cmd_hysteresis(&cfg, h, out),
        Command::Sweep(s) => cmd_sweep(&cfg, s, out),
    }
}

pub fn cmd_analyze(cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<u8> {
    let circuit = cfg.circuit()?;
    let (text, class) = report::analyze(&circuit)?;
    out.write_all(text.as_bytes())?;
    Ok(if class == StabilityClass::Stable {
        EXIT_OK
    } else {
        EXIT_UNSTABLE
    })
}

pub fn cmd_response(
    cfg: &RunConfig,
    kind: ResponseKind,
    out: &mut dyn Write,
) -> anyhow::Result<u8> {
    let circuit = cfg.circuit()?;
    let sim = cfg.sim.sim_config()?;
    let ss = build(circuit.topology, &circuit.params)?;
    let w = match kind {
        ResponseKind::Step => step_response(&ss, circuit.output_scale, &sim)?,
        ResponseKind::Impulse => impulse_response(&ss, circuit.output_scale, &sim)?,
    };
    let m = metrics(&w, kind)?;
    if let Some(path) = &cfg.output_path {
        csv::write_file(path, &csv::waveform_csv(&w))?;
    }
    out.write_all(report::circuit_header(&circuit).as_bytes())?;
    writeln!(
        out,
        "response: {}",
        if kind == ResponseKind::Step {
            "step"
        } else {
            "impulse"
        }
    )?;
    writeln!(out, "method: {}", sim.method)?;
    out.write_all(report::metrics_report(&m).as_bytes())?;
    Ok(EXIT_OK)
}

/// `out.csv` for a single run, `out_1.csv`, `out_2.csv`, ... for several.
fn numbered_path(path: &Path, k: usize, n: usize) -> PathBuf {
    if n == 1 {
        return path.to_path_buf();
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_{}.{}", k + 1, ext.to_string_lossy()),
        None => format!("{stem}_{}", k + 1),
    };
    path.with_file_name(name)
}

pub fn cmd_hysteresis(
    cfg: &RunConfig,
    args: &HysteresisArgs,
    out: &mut dyn Write,
) -> anyhow::Result<u8> {
    let section = match (cfg.memristor, args.memristor_defaults) {
        (Some(s), _) => s,
        (None, true) => MemristorSection::default(),
        (None, false) => {
            bail!("missing `memristor` section: add one to the config or pass --memristor-defaults")
        }
    };
    let dp = section.drift_params()?;
    let w0 = args.w0.unwrap_or(0.1 * dp.d_width);
    if args.freqs.is_empty() {
        bail!("invalid parameter `freq`: at least one frequency is required");
    }
    for &f in &args.freqs {
        require_positive("freq", f)?;
    }
    let n = args.freqs.len();
    writeln!(out, "amplitude: {}", fmt_sig(args.amplitude))?;
    writeln!(out, "w0: {}", fmt_sig(w0))?;
    for (k, &f) in args.freqs.iter().enumerate() {
        let drive = SineDrive::new(args.amplitude, 2.0 * PI * f, 0.0)?;
        let samples = run_hysteresis(&dp, &drive, w0, args.steps_per_period, args.periods)?;
        if let Some(path) = &cfg.output_path {
            let path = numbered_path(path, k, n);
            csv::write_file(&path, &csv::hysteresis_csv(&samples))?;
            writeln!(out, "csv: {}", path.display())?;
        }
        writeln!(out, "frequency_hz: {}", fmt_sig(f))?;
        for (p, a) in loop_areas_per_period(&samples, args.steps_per_period)
            .iter()
            .enumerate()
        {
            writeln!(out, "loop_area[{}]: {}", p + 1, fmt_sig(*a))?;
        }
        writeln!(
            out,
            "steady_loop_area: {}",
            fmt_sig(steady_loop_area(&samples, args.steps_per_period))
        )?;
    }
    Ok(EXIT_OK)
}

fn with_param(p: &CircuitParams, which: SweepParam, v: f64) -> anyhow::Result<CircuitParams> {
    let mut q = *p;
    match which {
        SweepParam::R => q.r = v,
        SweepParam::L => q.l = v,
        SweepParam::C => q.c_cap = v,
        SweepParam::RM => q.r_m = v,
    }
    q.validate()?;
    Ok(q)
}

pub fn cmd_sweep(cfg: &RunConfig, args: &SweepArgs, out: &mut dyn Write) -> anyhow::Result<u8> {
    let circuit = cfg.circuit()?;
    require_positive("from", args.from)?;
    require_positive("to", args.to)?;
    if args.count < 2 {
        bail!(
            "invalid parameter `count`: must be at least 2, got {}",
            args.count
        );
    }
    let (lo, hi) = (args.from.ln(), args.to.ln());
    let mut body = String::from(csv::SWEEP_HEADER);
    body.push('\n');
    let mut all_stable = true;
    for k in 0..args.count {
        let v = if k + 1 == args.count {
            args.to
        } else if k == 0 {
            args.from
        } else {
            (lo + (hi - lo) * k as f64 / (args.count - 1) as f64).exp()
        };
        let p = with_param(&circuit.params, args.param, v)?;
        let eig = eigenvalues(&build(circuit.topology, &p)?.a)?;
        let verdict = classify_stability(&eig, DEFAULT_STABILITY_TOL)?;
        all_stable &= verdict.class == StabilityClass::Stable;
        body.push_str(&format!(
            "{v},{},{}\n",
            verdict.max_real_part, verdict.class
        ));
    }
    match &cfg.output_path {
        Some(path) => {
            csv::write_file(path, &body).with_context(|| "sweep output")?;
            writeln!(out, "rows: {}", args.count)?;
            writeln!(out, "all stable: {}", if all_stable { "yes" } else { "no" })?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(if all_stable { EXIT_OK } else { EXIT_UNSTABLE })
}
