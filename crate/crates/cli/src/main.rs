//! `tpa`: checks, solvers and constructions on algebra files.

mod commands;
mod load;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::{Format, Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "tpa", version, about = "Exact checks and solvers for transposed Poisson structures")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "machine", global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for every random choice; recorded in the report.
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Solver unknown limit (same as TPA_CAPACITY).
    #[arg(long, global = true)]
    capacity: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArg {
    /// Algebra file.
    #[arg(long)]
    pub algebra: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one identity on every basis tuple.
    Check {
        id: String,
        #[command(flatten)]
        input: AlgebraArg,
        /// Second file supplying the bracket.
        #[arg(long)]
        algebra2: Option<PathBuf>,
        /// Linear map file for identities with a map slot.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// δ-derivations of a binary or n-ary table.
    Derive {
        #[command(flatten)]
        input: AlgebraArg,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        arity: Option<usize>,
    },
    /// δ-biderivations.
    Biderive {
        #[command(flatten)]
        input: AlgebraArg,
        #[arg(long)]
        delta: String,
        /// Only symmetric solutions.
        #[arg(long)]
        symmetric: bool,
    },
    /// Hom-Lie structures.
    Homlie {
        #[command(flatten)]
        input: AlgebraArg,
    },
    /// Commutative products compatible with a Lie bracket.
    Tpspace {
        #[command(flatten)]
        input: AlgebraArg,
    },
    /// Build a new structure from verified inputs.
    Construct(commands::ConstructArgs),
    /// Oscillator algebra, optionally with a TP product.
    Oscillator(commands::OscillatorArgs),
    /// Witt or W(1) TP pairs.
    Witt1(commands::WittArgs),
    /// Sampled verification of the fraction-field bracket.
    FieldCheck(commands::FieldArgs),
    /// List catalog ids, or emit one as an algebra file.
    Catalog {
        id: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// List the identity catalog.
    Identities,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(tpa_core::Error),
}

impl From<tpa_core::Error> for CliError {
    fn from(e: tpa_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Derive { .. } => "derive",
        Command::Biderive { .. } => "biderive",
        Command::Homlie { .. } => "homlie",
        Command::Tpspace { .. } => "tpspace",
        Command::Construct(_) => "construct",
        Command::Oscillator(_) => "oscillator",
        Command::Witt1(_) => "witt1",
        Command::FieldCheck(_) => "field-check",
        Command::Catalog { .. } => "catalog",
        Command::Identities => "identities",
    }
}

fn error_report(mut r: Report, e: &CliError) -> Report {
    r.result.clear();
    r.lines.clear();
    r.set("error", e.to_string());
    r.line(format!("error: {e}"));
    r.verdict = match e {
        CliError::Core(tpa_core::Error::Capacity { .. }) => Verdict::Capacity,
        CliError::Core(tpa_core::Error::Precondition { report: Some(rep), .. }) => {
            r.set("failed_check", rep.to_json());
            r.line(rep.summary());
            Verdict::Fails
        }
        _ => Verdict::Error,
    };
    r
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(c) = cli.capacity {
        std::env::set_var("TPA_CAPACITY", c.to_string());
    }
    let mut report = Report::new(command_name(&cli.command), cli.seed, tpa_core::linsolve::capacity());
    let mut loader = load::Loader::new();
    let outcome = commands::run(&cli.command, &mut report, &mut loader);
    report.inputs = std::mem::take(&mut loader.inputs);
    if let Err(e) = &outcome {
        eprintln!("tpa: {e}");
        report = error_report(report, e);
    }
    let text = report.render(cli.format);
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("tpa: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}
