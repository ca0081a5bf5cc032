//! Run configuration from flags and an optional JSON file.

use crate::angles::parse_interval;
use crate::CliError;
use clap::{Parser, ValueEnum};
use rpl_core::experiments::{ModelSpec, Thresholds};
use rpl_core::geometry::{make_body, BodySpec};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Measure,
    Simulate,
    Clt,
    Scaling,
    Mixing,
    Mgf,
    UniformCompare,
    Wcheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Measure => "measure",
            Command::Simulate => "simulate",
            Command::Clt => "clt",
            Command::Scaling => "scaling",
            Command::Mixing => "mixing",
            Command::Mgf => "mgf",
            Command::UniformCompare => "uniform-compare",
            Command::Wcheck => "wcheck",
        }
    }

    fn single_body(self) -> bool {
        !matches!(self, Command::Clt | Command::Scaling | Command::Mgf)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Everything that determines a run. Serialised into the header of every
/// output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub bodies: Vec<String>,
    pub model: String,
    pub trials: u64,
    pub seed: u64,
    pub partition: usize,
    pub theta: f64,
    pub bins: usize,
    pub intervals: Vec<String>,
    pub lambdas: Vec<f64>,
    /// Profile sample count for `measure` without intervals.
    pub points: usize,
    /// Clipping angles per π for wet areas.
    pub grid: usize,
    pub sampler: String,
    pub thresholds: Thresholds,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: usize,
}

/// The JSON config file: any subset of the run fields.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<Command>,
    pub bodies: Option<Vec<String>>,
    pub model: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub partition: Option<usize>,
    pub theta: Option<String>,
    pub bins: Option<usize>,
    pub intervals: Option<Vec<String>>,
    pub lambdas: Option<Vec<f64>>,
    pub points: Option<usize>,
    pub grid: Option<usize>,
    pub sampler: Option<String>,
    pub thresholds: Option<Thresholds>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
}

/// Random polygons in convex bodies: geometry measurements and Monte-Carlo
/// reports.
#[derive(Debug, Parser)]
#[command(name = "rpl", version)]
pub struct Args {
    /// Subcommand (may instead come from the config file).
    #[arg(value_enum)]
    pub command: Option<Command>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Body spec, e.g. `disk:area=1e4,k=4096`; repeat for families.
    #[arg(long = "body")]
    pub bodies: Vec<String>,
    /// `poisson`, or `uniform:n=N`.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, short = 'M')]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of equal-μ sectors.
    #[arg(long, short = 'L')]
    pub partition: Option<usize>,
    /// Direction for `wcheck`; accepts `pi` expressions.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long)]
    pub bins: Option<usize>,
    /// `alpha:beta`, e.g. `0:pi/3`; repeatable.
    #[arg(long = "interval", allow_hyphen_values = true)]
    pub intervals: Vec<String>,
    /// λ multiples of `eps_hat/μ` for `mgf`; repeatable.
    #[arg(long = "lambda", allow_hyphen_values = true)]
    pub lambdas: Vec<f64>,
    /// Profile sample count for `measure`.
    #[arg(long, conflicts_with = "intervals")]
    pub points: Option<usize>,
    /// Clipping angles per π for wet areas.
    #[arg(long)]
    pub grid: Option<usize>,
    /// `annulus` or `full`.
    #[arg(long)]
    pub sampler: Option<String>,
    /// JSON thresholds file (same schema as the bundled defaults).
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads; overrides RPL_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
}

pub const THREADS_ENV: &str = "RPL_THREADS";

fn read_file_config(path: &PathBuf) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

/// Parse and validate the command line, reading `RPL_THREADS` from the
/// environment.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    parse_args_with_env(argv, std::env::var(THREADS_ENV).ok())
}

pub fn parse_args_with_env<I, T>(argv: I, env_threads: Option<String>) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(CliError::Clap)?;
    resolve(args, env_threads)
}

fn or_file<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn resolve(args: Args, env_threads: Option<String>) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(p) => read_file_config(p)?,
        None => FileConfig::default(),
    };
    let command = args
        .command
        .or(file.command)
        .ok_or_else(|| CliError::Usage("no subcommand given (flag or config `command`)".into()))?;
    let bodies = if args.bodies.is_empty() { file.bodies.unwrap_or_default() } else { args.bodies };
    let intervals = if args.intervals.is_empty() { file.intervals.unwrap_or_default() } else { args.intervals };
    let lambdas = if args.lambdas.is_empty() {
        file.lambdas.unwrap_or_else(|| vec![-1.0, -0.5, 0.0, 0.5, 1.0])
    } else {
        args.lambdas
    };
    let thresholds = match (&args.thresholds, file.thresholds) {
        (Some(p), _) => Thresholds::from_file(p)?,
        (None, Some(t)) => t,
        (None, None) => Thresholds::default(),
    };
    let env = env_threads
        .map(|s| s.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("{THREADS_ENV}=`{s}` is not a count"))))
        .transpose()?;
    let threads = args
        .threads
        .or(env)
        .or(file.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let theta = or_file(args.theta, file.theta, "0".into());
    let default_partition = if command == Command::Mixing { 16 } else { 0 };
    let cfg = RunConfig {
        command,
        bodies,
        model: or_file(args.model, file.model, "poisson".into()),
        trials: or_file(args.trials, file.trials, 10_000),
        seed: or_file(args.seed, file.seed, 1),
        partition: or_file(args.partition, file.partition, default_partition),
        theta: crate::angles::parse_angle(&theta)?,
        bins: or_file(args.bins, file.bins, 50),
        intervals,
        lambdas,
        points: or_file(args.points, file.points, 360),
        grid: or_file(args.grid, file.grid, rpl_core::measure::wet::DRY_GRID_PER_PI),
        sampler: or_file(args.sampler, file.sampler, "annulus".into()),
        thresholds,
        out: args.out.or(file.out),
        format: or_file(args.format, file.format, Format::Csv),
        threads,
    };
    validate(&cfg)?;
    Ok(cfg)
}

/// Body specs parsed and built, so that bad parameters fail before any work.
pub fn body_specs(cfg: &RunConfig) -> Result<Vec<BodySpec>, CliError> {
    cfg.bodies
        .iter()
        .map(|s| {
            let spec: BodySpec = s.parse()?;
            make_body(&spec)?;
            Ok(spec)
        })
        .collect()
}

pub fn intervals(cfg: &RunConfig) -> Result<Vec<(f64, f64)>, CliError> {
    cfg.intervals.iter().map(|s| parse_interval(s)).collect()
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    if cfg.bodies.is_empty() {
        return Err(CliError::Usage("at least one --body is required".into()));
    }
    if cfg.command.single_body() && cfg.bodies.len() != 1 {
        return Err(CliError::Usage(format!("`{}` takes exactly one --body", cfg.command.name())));
    }
    body_specs(cfg)?;
    let model: ModelSpec = cfg.model.parse()?;
    if model.name != "poisson" && !matches!(cfg.command, Command::Simulate | Command::Clt | Command::Scaling) {
        return Err(CliError::Usage(format!("`{}` fixes its own point model; drop --model", cfg.command.name())));
    }
    if !cfg.intervals.is_empty() && !matches!(cfg.command, Command::Measure | Command::Mgf) {
        return Err(CliError::Usage(format!("--interval does not apply to `{}`", cfg.command.name())));
    }
    intervals(cfg)?;
    if cfg.command != Command::Measure && cfg.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if cfg.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    if cfg.grid == 0 || cfg.points == 0 {
        return Err(CliError::Usage("--grid and --points must be positive".into()));
    }
    if !rpl_core::process::SamplerRegistry::default().names().contains(&cfg.sampler.as_str()) {
        return Err(rpl_core::Error::Unknown { registry: "sampler", name: cfg.sampler.clone() }.into());
    }
    Ok(())
}
