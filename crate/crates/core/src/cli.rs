//! The `secretary` command line.
//!
//! Data goes to stdout, diagnostics to stderr. Every JSON record carries
//! `"schema": 1`. Floats are written in shortest round-trip form, so parsing
//! the output recovers the computed `f64` bit for bit.
//!
//! Failures print one JSON line to stderr,
//! `{"schema":1,"error":"<kind>","message":"..."}`, and exit with
//! 1 for usage and domain errors or 2 for internal errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{self, RegimeSpec};
use crate::error::Error;
use crate::mallows::MallowsModel;
use crate::montecarlo;
use crate::policy;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable supplying the default `--seed`.
pub const SEED_ENV: &str = "SECRETARY_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "secretary",
    version,
    about = "Threshold strategies for the secretary problem under Mallows(q) arrival orders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact success probability of S(n, m); q = 1 uses the uniform formula.
    Exact(ExactArgs),
    /// Best threshold m* and its success probability; q = 1 is the uniform case.
    Optimal(OptimalArgs),
    /// Asymptotic threshold and limiting success probability for a bias regime.
    Predict(PredictArgs),
    /// Monte Carlo estimate of the success probability of S(n, m).
    Simulate(SimulateArgs),
    /// Tabulate a quantity over a grid of one parameter.
    Sweep(SweepArgs),
    /// Draw Mallows(q) arrival orders, one per line.
    Sample(SampleArgs),
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Mallows parameter in (0, 1]
    #[arg(long)]
    pub q: f64,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    #[arg(long)]
    pub n: usize,
    /// Mallows parameter in (0, 1]
    #[arg(long)]
    pub q: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// q = 1 - c/n
    Weak,
    /// q = 1 - c/n^alpha
    Moderate,
    /// fixed q
    Strong,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[arg(long, value_enum)]
    pub regime: Regime,
    #[arg(long)]
    pub n: usize,
    /// Bias strength (weak and moderate regimes)
    #[arg(long)]
    pub c: Option<f64>,
    /// Exponent in (0, 1) (moderate regime)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Mallows parameter in (0, 1) (strong regime)
    #[arg(long)]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    /// Base seed; worker k uses base + k
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVariable {
    M,
    Q,
    N,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// A one-parameter sweep.
///
/// - `m`: exact probability for each threshold (default grid `0..n`).
/// - `q`: optimal threshold at each `q`, plus the probability of `--m` if given.
/// - `n`: as for `q`; with `--c` instead of `--q`, `q = 1 - c/n` per row.
/// - `c`: weak regime, `q = 1 - c/n` per row.
#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub variable: SweepVariable,
    /// Explicit grid, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["start", "stop", "steps"])]
    pub values: Option<Vec<f64>>,
    #[arg(long, requires_all = ["stop", "steps"])]
    pub start: Option<f64>,
    #[arg(long, requires_all = ["start", "steps"])]
    pub stop: Option<f64>,
    #[arg(long, requires_all = ["start", "stop"])]
    pub steps: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    /// Mallows parameter in (0, 1]
    #[arg(long)]
    pub q: f64,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Internal(m) => m,
        }
    }

    /// The single stderr line for this error.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            schema: u32,
            error: &'a str,
            message: &'a str,
        }
        serde_json::to_string(&Line {
            schema: SCHEMA_VERSION,
            error: self.kind(),
            message: self.message(),
        })
        .expect("plain strings serialize")
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Quadrature { .. } => CliError::Internal(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Debug, Serialize)]
struct ExactRecord {
    schema: u32,
    n: usize,
    m: usize,
    q: f64,
    probability: f64,
}

#[derive(Debug, Serialize)]
struct OptimalRecord {
    schema: u32,
    n: usize,
    q: f64,
    m_star: usize,
    p_star: f64,
}

#[derive(Debug, Serialize)]
struct PredictRecord {
    schema: u32,
    regime: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    q: f64,
    m_star: usize,
    p_limit: f64,
}

#[derive(Debug, Serialize)]
struct SimulateRecord {
    schema: u32,
    n: usize,
    m: usize,
    q: f64,
    estimate: f64,
    std_error: f64,
    probability: f64,
    samples: u64,
    seed: u64,
    workers: usize,
}

/// One sweep row. CSV always has all columns; unused cells are empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: Option<usize>,
    pub q: f64,
    pub c: Option<f64>,
    pub probability: Option<f64>,
    pub m_star: Option<usize>,
    pub p_star: Option<f64>,
}

#[derive(Serialize)]
struct JsonSweepRow<'a> {
    schema: u32,
    #[serde(flatten)]
    row: &'a SweepRow,
}

fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs the command,
/// writing data to `out`. Returns the process exit code; on failure the
/// error line has already been written to `err`.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let first = first.strip_prefix("error: ").unwrap_or(first);
            let ce = CliError::Usage(first.to_string());
            let _ = writeln!(err, "{}", ce.to_json_line());
            return ce.exit_code();
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(ce) => {
            let _ = writeln!(err, "{}", ce.to_json_line());
            ce.exit_code()
        }
    }
}

pub fn execute<W: Write>(command: &Command, out: &mut W) -> Result<(), CliError> {
    match command {
        Command::Exact(a) => cmd_exact(a, out),
        Command::Optimal(a) => cmd_optimal(a, out),
        Command::Predict(a) => cmd_predict(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Sample(a) => cmd_sample(a, out),
    }
}

fn cmd_exact<W: Write>(a: &ExactArgs, out: &mut W) -> Result<(), CliError> {
    let p = policy::success_probability(a.n, a.m, a.q)?;
    write_json(
        out,
        &ExactRecord {
            schema: SCHEMA_VERSION,
            n: a.n,
            m: a.m,
            q: a.q,
            probability: p.value,
        },
    )
}

fn cmd_optimal<W: Write>(a: &OptimalArgs, out: &mut W) -> Result<(), CliError> {
    let o = policy::optimal_threshold(a.n, a.q)?;
    write_json(
        out,
        &OptimalRecord {
            schema: SCHEMA_VERSION,
            n: a.n,
            q: a.q,
            m_star: o.m_star,
            p_star: o.p_star.value,
        },
    )
}

fn require<T>(value: Option<T>, flag: &str, context: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required {context}")))
}

fn cmd_predict<W: Write>(a: &PredictArgs, out: &mut W) -> Result<(), CliError> {
    let spec = match a.regime {
        Regime::Weak => RegimeSpec::weak(require(a.c, "c", "for the weak regime")?)?,
        Regime::Moderate => RegimeSpec::moderate(
            require(a.c, "c", "for the moderate regime")?,
            require(a.alpha, "alpha", "for the moderate regime")?,
        )?,
        Regime::Strong => RegimeSpec::strong(require(a.q, "q", "for the strong regime")?)?,
    };
    let prediction = asymptotics::predict(spec, a.n)?;
    let (c, alpha) = match spec {
        RegimeSpec::Weak { c } => (Some(c), None),
        RegimeSpec::Moderate { c, alpha } => (Some(c), Some(alpha)),
        RegimeSpec::Strong { .. } => (None, None),
    };
    write_json(
        out,
        &PredictRecord {
            schema: SCHEMA_VERSION,
            regime: spec.name(),
            n: a.n,
            c,
            alpha,
            q: spec.q_for(a.n)?,
            m_star: prediction.m_star,
            p_limit: prediction.p_limit,
        },
    )
}

fn cmd_simulate<W: Write>(a: &SimulateArgs, out: &mut W) -> Result<(), CliError> {
    let exact = policy::success_probability(a.n, a.m, a.q)?;
    let r = montecarlo::estimate_success(a.n, a.m, a.q, a.samples, a.seed, a.workers)?;
    write_json(
        out,
        &SimulateRecord {
            schema: SCHEMA_VERSION,
            n: a.n,
            m: a.m,
            q: a.q,
            estimate: r.estimate,
            std_error: r.std_error,
            probability: exact.value,
            samples: r.samples,
            seed: r.base_seed,
            workers: r.workers,
        },
    )
}

fn grid(a: &SweepArgs) -> Result<Option<Vec<f64>>, CliError> {
    if let Some(values) = &a.values {
        if values.is_empty() {
            return Err(CliError::Usage("--values must not be empty".into()));
        }
        return Ok(Some(values.clone()));
    }
    match (a.start, a.stop, a.steps) {
        (Some(start), Some(stop), Some(steps)) => {
            if steps == 0 {
                return Err(CliError::Usage("--steps must be at least 1".into()));
            }
            if steps == 1 {
                return Ok(Some(vec![start]));
            }
            let h = (stop - start) / (steps - 1) as f64;
            Ok(Some(
                (0..steps)
                    .map(|i| if i + 1 == steps { stop } else { start + h * i as f64 })
                    .collect(),
            ))
        }
        _ => Ok(None),
    }
}

fn as_count(v: f64, name: &'static str) -> Result<usize, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v <= usize::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(CliError::Domain(
            Error::domain(name, v, "a non-negative integer").to_string(),
        ))
    }
}

fn weak_q(n: usize, c: f64) -> Result<f64, CliError> {
    Ok(RegimeSpec::weak(c)?.q_for(n)?)
}

fn sweep_row(n: usize, q: f64, c: Option<f64>, m: Option<usize>) -> Result<SweepRow, CliError> {
    let probability = m
        .map(|m| policy::success_probability(n, m, q).map(|p| p.value))
        .transpose()?;
    let o = policy::optimal_threshold(n, q)?;
    Ok(SweepRow {
        n,
        m,
        q,
        c,
        probability,
        m_star: Some(o.m_star),
        p_star: Some(o.p_star.value),
    })
}

/// Computes the rows of a sweep.
pub fn sweep_rows(a: &SweepArgs) -> Result<Vec<SweepRow>, CliError> {
    let grid = grid(a)?;
    match a.variable {
        SweepVariable::M => {
            let n = require(a.n, "n", "when sweeping m")?;
            let q = require(a.q, "q", "when sweeping m")?;
            let ms: Vec<usize> = match grid {
                Some(g) => g.into_iter().map(|v| as_count(v, "m")).collect::<Result<_, _>>()?,
                None => (0..n).collect(),
            };
            ms.into_iter()
                .map(|m| {
                    Ok(SweepRow {
                        n,
                        m: Some(m),
                        q,
                        c: None,
                        probability: Some(policy::success_probability(n, m, q)?.value),
                        m_star: None,
                        p_star: None,
                    })
                })
                .collect()
        }
        SweepVariable::Q => {
            let n = require(a.n, "n", "when sweeping q")?;
            let qs = require(grid, "values", "(or --start/--stop/--steps) when sweeping q")?;
            qs.into_iter().map(|q| sweep_row(n, q, None, a.m)).collect()
        }
        SweepVariable::N => {
            let ns = require(grid, "values", "(or --start/--stop/--steps) when sweeping n")?;
            ns.into_iter()
                .map(|v| {
                    let n = as_count(v, "n")?;
                    match (a.q, a.c) {
                        (Some(q), None) => sweep_row(n, q, None, a.m),
                        (None, Some(c)) => sweep_row(n, weak_q(n, c)?, Some(c), a.m),
                        _ => Err(CliError::Usage(
                            "exactly one of --q or --c is required when sweeping n".into(),
                        )),
                    }
                })
                .collect()
        }
        SweepVariable::C => {
            let n = require(a.n, "n", "when sweeping c")?;
            let cs = require(grid, "values", "(or --start/--stop/--steps) when sweeping c")?;
            cs.into_iter()
                .map(|c| sweep_row(n, weak_q(n, c)?, Some(c), a.m))
                .collect()
        }
    }
}

fn cmd_sweep<W: Write>(a: &SweepArgs, out: &mut W) -> Result<(), CliError> {
    let rows = sweep_rows(a)?;
    match a.format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let rows: Vec<JsonSweepRow<'_>> = rows
                .iter()
                .map(|row| JsonSweepRow {
                    schema: SCHEMA_VERSION,
                    row,
                })
                .collect();
            write_json(out, &rows)?;
        }
    }
    Ok(())
}

fn cmd_sample<W: Write>(a: &SampleArgs, out: &mut W) -> Result<(), CliError> {
    let model = MallowsModel::new(a.n, a.q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut buf = std::io::BufWriter::new(out);
    for _ in 0..a.count {
        writeln!(buf, "{}", model.sample(&mut rng))?;
    }
    buf.flush()?;
    Ok(())
}
