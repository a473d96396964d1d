//! Command-line front end.
//!
//! Exit codes: 0 when every computation agrees, 3 when some computation
//! disagrees with the expected identities, 1 on any input error.

mod dot;
mod report;
mod verify;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::grid_poset::{self, Antichain, AntichainDoc, GridShape, PosetError};

pub use dot::render_dot;
pub use report::{build_report, CutDoc, LocalAntichain, ReportDocument, SideDoc, WeightSpace};
pub use verify::{check_case, summarize, Check, CheckCount, CheckOutcome, Counterexample, VerifySummary};

pub const DEFAULT_SWEEP_CAP: usize = 7;
pub const CAP_ENV_VAR: &str = "CS_HILBERT_CAP";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT_ERROR: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid antichain: {0}")]
    Domain(#[from] PosetError),
    #[error("invalid dimensions {0:?}, expected AxB with positive integers")]
    Dimensions(String),
    #[error("{0}")]
    Usage(String),
    #[error("{m}x{n} exceeds the cap of {cap}x{cap}; set {CAP_ENV_VAR} to raise it")]
    CapExceeded { m: usize, n: usize, cap: usize },
    #[error("{CAP_ENV_VAR}={0:?} is not a positive integer")]
    BadCap(String),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cs-hilbert",
    version,
    about = "Tangent spaces and dimensions of bigraded Cartwright-Sturmfels Hilbert schemes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for one antichain.
    Report(ReportArgs),
    /// Check every identity over a sweep of grids or a random sample.
    Verify(VerifyArgs),
    /// List every antichain of a grid.
    Enumerate(EnumerateArgs),
    /// Draw the antichain as a bipartite graph in DOT.
    Dot(DotArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Antichain JSON: a file path, `-` for stdin, or the JSON text itself.
    #[arg(long, short, default_value = "-")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file, `-` for stdout.
    #[arg(long, short, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Hilbert table box `D1xD2`, default `mxn`.
    #[arg(long = "box", value_parser = parse_box)]
    pub hilbert_box: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// Check every antichain of the `MxN` grid.
    #[arg(long, value_parser = parse_dims, conflicts_with_all = ["samples", "grid"])]
    pub sweep: Option<(usize, usize)>,
    /// With `--sweep`, also check every grid `m' x n'` with `m' <= M`, `n' <= N`.
    #[arg(long, requires = "sweep")]
    pub include_smaller: bool,
    /// Number of random antichains to check.
    #[arg(long, requires = "grid")]
    pub samples: Option<usize>,
    /// Seed for `--samples`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Grid for `--samples`.
    #[arg(long, value_parser = parse_dims, requires = "samples")]
    pub grid: Option<(usize, usize)>,
    /// Hilbert box `D1xD2` for the exact-sequence check, default `mxn`.
    #[arg(long = "box", value_parser = parse_box)]
    pub hilbert_box: Option<(usize, usize)>,
    /// Worker threads, default all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub output: OutputArgs,
    /// The grid `MxN`.
    #[arg(long, value_parser = parse_dims)]
    pub grid: (usize, usize),
}

#[derive(Debug, Args)]
pub struct DotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Draw only the antichain edges.
    #[arg(long)]
    pub antichain_only: bool,
}

fn split_dims(text: &str) -> Option<(usize, usize)> {
    let (a, b) = text.split_once(['x', 'X'])?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parses `MxN` with both sides positive.
pub fn parse_dims(text: &str) -> Result<(usize, usize), String> {
    match split_dims(text) {
        Some((m, n)) if m > 0 && n > 0 => Ok((m, n)),
        _ => Err(CliError::Dimensions(text.to_string()).to_string()),
    }
}

/// Parses `D1xD2`; zero is allowed.
pub fn parse_box(text: &str) -> Result<(usize, usize), String> {
    split_dims(text).ok_or_else(|| format!("invalid box {text:?}, expected D1xD2"))
}

/// Sweep cap from the environment, or [`DEFAULT_SWEEP_CAP`].
pub fn sweep_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_ENV_VAR) {
        Err(_) => Ok(DEFAULT_SWEEP_CAP),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(CliError::BadCap(v)),
        },
    }
}

fn check_cap((m, n): (usize, usize), cap: usize) -> Result<GridShape, CliError> {
    if m > cap || n > cap {
        return Err(CliError::CapExceeded { m, n, cap });
    }
    Ok(GridShape::new(m, n)?)
}

fn read_input(input: &str) -> Result<String, CliError> {
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read { path: "<stdin>".into(), source })?;
        return Ok(text);
    }
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    fs::read_to_string(input).map_err(|source| CliError::Read { path: input.into(), source })
}

/// Parses the antichain document, normalizing its points.
pub fn parse_antichain(text: &str) -> Result<Antichain, CliError> {
    let doc: AntichainDoc = serde_json::from_str(text)?;
    Ok(Antichain::try_from(doc)?)
}

fn write_output(output: &str, contents: &str) -> Result<(), CliError> {
    if output == "-" {
        let mut stdout = io::stdout().lock();
        return stdout
            .write_all(contents.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| CliError::Write { path: "<stdout>".into(), source });
    }
    fs::write(PathBuf::from(output), contents).map_err(|source| CliError::Write { path: output.into(), source })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("documents serialize");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
struct EnumerationDoc {
    m: usize,
    n: usize,
    count: usize,
    antichains: Vec<Antichain>,
}

/// Result of a successful run: whether every computation agreed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub consistent: bool,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        if self.consistent {
            EXIT_OK
        } else {
            EXIT_INCONSISTENT
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Report(args) => {
            let antichain = parse_antichain(&read_input(&args.input.input)?)?;
            let shape = antichain.shape();
            let report = build_report(&antichain, args.hilbert_box.unwrap_or((shape.m(), shape.n())));
            write_output(&args.output.output, &to_json(&report))?;
            Ok(Outcome { consistent: report.consistent })
        }
        Command::Verify(args) => {
            let summary = run_verify(&args)?;
            write_output(&args.output.output, &to_json(&summary))?;
            Ok(Outcome { consistent: summary.consistent })
        }
        Command::Enumerate(args) => {
            let shape = check_cap(args.grid, sweep_cap()?)?;
            let antichains: Vec<Antichain> = grid_poset::enumerate_antichains(shape).collect();
            let doc = EnumerationDoc { m: shape.m(), n: shape.n(), count: antichains.len(), antichains };
            write_output(&args.output.output, &to_json(&doc))?;
            Ok(Outcome { consistent: true })
        }
        Command::Dot(args) => {
            let antichain = parse_antichain(&read_input(&args.input.input)?)?;
            write_output(&args.output.output, &render_dot(&antichain, args.antichain_only))?;
            Ok(Outcome { consistent: true })
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<VerifySummary, CliError> {
    let cap = sweep_cap()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        pool = pool.num_threads(jobs.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Pool(e.to_string()))?;

    match (args.sweep, args.samples, args.grid) {
        (Some((m, n)), _, _) => {
            check_cap((m, n), cap)?;
            let grids: Vec<(usize, usize)> = if args.include_smaller {
                (1..=m).flat_map(|a| (1..=n).map(move |b| (a, b))).collect()
            } else {
                vec![(m, n)]
            };
            let mut cases = Vec::new();
            for &(a, b) in &grids {
                cases.extend(grid_poset::enumerate_antichains(GridShape::new(a, b)?));
            }
            let labels = grids.iter().map(|(a, b)| format!("{a}x{b}")).collect();
            Ok(pool.install(|| summarize(&cases, args.hilbert_box, labels)))
        }
        (None, Some(samples), Some(grid)) => {
            let shape = check_cap(grid, cap)?;
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let cases: Vec<Antichain> = (0..samples).map(|_| grid_poset::random_antichain(shape, &mut rng)).collect();
            let mut summary = pool.install(|| summarize(&cases, args.hilbert_box, vec![shape.to_string()]));
            summary.seed = Some(args.seed);
            summary.sampled = Some(cases);
            Ok(summary)
        }
        _ => Err(CliError::Usage("verify needs --sweep MxN or --samples N --grid MxN".into())),
    }
}
