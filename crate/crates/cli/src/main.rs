//! `radial-plap`: closed forms, shooting, solution curves and Pohozaev scans
//! from the command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, spec files or parameters (exit code 2).
    Validation(String),
    /// The computation itself failed (exit code 3).
    Numerical(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "radial-plap", version, about)]
struct Cli {
    /// Directory for CSV/JSON outputs and `manifest.json`. Without it the
    /// main output goes to stdout and summaries to stderr.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for curve sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate a closed-form family: r, u, u', residual.
    EvalFamily(FamilyArgs),
    /// Shoot from u(0) = a: CSV profile plus JSON event summary.
    Shoot(ShootArgs),
    /// Shoot through the change of variables t = r^κ/κ; same flags as `shoot`.
    SolveViaCov(ShootArgs),
    /// Trace the (λ, u(0)) Dirichlet solution curve on the unit ball.
    TraceCurve(TraceArgs),
    /// P, P' (formula) and P' (numeric) along a shot or a closed form.
    PohozaevScan(ScanArgs),
    /// Exact solution counts for the exponential Dirichlet problems.
    BratuCount(BratuArgs),
    /// Parameters of the change of variables removing the weight r^α.
    Transform(TransformArgs),
}

#[derive(Args, Clone)]
pub struct IntegratorArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e3)]
    pub rmax: f64,
    /// Check f > 0 on (0, a] by sampling, at a only, or not at all.
    #[arg(long, value_enum, default_value_t = Positivity::Sampled)]
    pub positivity: Positivity,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Positivity {
    Sampled,
    AtStart,
    Off,
}

#[derive(Args)]
pub struct FamilyArgs {
    /// Family id, F1 to F10.
    #[arg(long)]
    pub family: String,
    /// Family parameter as `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 1e-6)]
    pub r_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Args)]
pub struct ShootArgs {
    /// Problem spec JSON file.
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    /// Keep integrating past the first root up to --rmax.
    #[arg(long)]
    pub through_root: bool,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RouteArg {
    Direct,
    Cov,
}

#[derive(Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub problem: PathBuf,
    #[arg(long)]
    pub a_min: f64,
    #[arg(long)]
    pub a_max: f64,
    /// Log-spaced grid size.
    #[arg(long, default_value_t = 64)]
    pub points: usize,
    /// λ values at which to count solutions; repeatable.
    #[arg(long = "lambda")]
    pub lambdas: Vec<f64>,
    #[arg(long, value_enum, default_value_t = RouteArg::Direct)]
    pub route: RouteArg,
    #[arg(long, default_value_t = 3)]
    pub refine_rounds: usize,
    /// Skip the λ-scaled Dirichlet re-shoot at each point.
    #[arg(long)]
    pub no_reshoot: bool,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
}

#[derive(Args)]
pub struct ScanArgs {
    /// Problem spec JSON file; requires --a.
    #[arg(long, conflicts_with = "family")]
    pub problem: Option<PathBuf>,
    #[arg(long, requires = "problem")]
    pub a: Option<f64>,
    /// Closed-form family id instead of a shot.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    #[arg(long, default_value_t = 1e-3)]
    pub r_min: f64,
    /// Scan end; defaults to just inside the first root or 10.
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
    #[command(flatten)]
    pub integrator: IntegratorArgs,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum BratuVariant {
    /// Δu + B e^u = 0 on the unit disk.
    #[value(name = "2d")]
    Planar,
    /// The p = n problem in dimension --n.
    Pn,
}

#[derive(Args)]
pub struct BratuArgs {
    #[arg(long, value_enum)]
    pub variant: BratuVariant,
    #[arg(long = "B")]
    pub b: f64,
    /// Dimension for `--variant pn`.
    #[arg(long)]
    pub n: Option<f64>,
}

#[derive(Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub n: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Validation("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    let out = cli.out.as_deref();
    match &cli.command {
        Command::EvalFamily(a) => commands::eval_family(a, out),
        Command::Shoot(a) => commands::shoot(a, out, false),
        Command::SolveViaCov(a) => commands::shoot(a, out, true),
        Command::TraceCurve(a) => commands::trace_curve(a, out),
        Command::PohozaevScan(a) => commands::pohozaev_scan(a, out),
        Command::BratuCount(a) => commands::bratu_count(a, out),
        Command::Transform(a) => commands::transform(a, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("radial-plap: {e}");
            ExitCode::from(e.code())
        }
    }
}
