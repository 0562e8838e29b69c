//! `chaingeo`: generate sample data, compute invariants, manipulate chains and
//! run the verification suites.
//!
//! Exit codes: 0 pass, 1 property failure, 2 usage or schema error, 3 every
//! requested check skipped.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use chaingeo::sampler::DEFAULT_HEIGHT;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chaingeo",
    version,
    about = "Exact incidence geometry of m-chains"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample points, pairs, maximal triples, chains or chart points.
    Gen(GenArgs),
    /// Compute triple invariants, intersection indices or span dimensions.
    Inv(InvArgs),
    /// Chains through pairs, circles, lifts and common points.
    Chain(ChainArgs),
    /// Run property checks.
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Point,
    Pair,
    Triple,
    Chain,
    Heis,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Index at v_inf (chains only); random when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    pub height: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvKind {
    Bergmann,
    Cartan,
    Index,
    Span,
}

#[derive(Args)]
pub struct InvArgs {
    #[arg(long, value_enum)]
    pub kind: InvKind,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainOp {
    Through,
    Project,
    Lift,
    Intersect,
}

#[derive(Args)]
pub struct ChainArgs {
    #[arg(value_enum)]
    pub op: ChainOp,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CheckArgs {
    /// `all` or a comma-separated list of check ids.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    pub height: u32,
    /// One JSON report per line instead of a table.
    #[arg(long)]
    pub json: bool,
}

/// Failure modes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage error: {s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("CHAINGEO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| CliError::Usage(format!("CHAINGEO_THREADS must be a number, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = init_threads().and_then(|()| match &cli.cmd {
        Cmd::Gen(a) => commands::gen(a),
        Cmd::Inv(a) => commands::inv(a),
        Cmd::Chain(a) => commands::chain(a),
        Cmd::Check(a) => commands::check(a),
    });
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("chaingeo: {e}");
            ExitCode::from(e.code())
        }
    }
}
