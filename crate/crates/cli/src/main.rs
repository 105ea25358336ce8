//! `hyperramsey` command line: extraction runs, bound tables, lemma
//! oracles, exhaustive search and trace validation.

mod commands;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperramsey::Error;

#[derive(Parser, Debug)]
#[command(name = "hyperramsey", version, about = "Hypergraph Ramsey extraction, bounds and oracles")]
pub struct Cli {
    /// Report layout.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object on stdout.
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract a homogeneous set and validate its trace.
    Extract(ExtractArgs),
    /// Upper bounds on R(a, k, c) from every applicable family.
    Bound(BoundArgs),
    /// Counting-lemma oracles.
    Lemma {
        #[command(subcommand)]
        which: LemmaCommand,
    },
    /// Exhaustive search for small Ramsey numbers.
    Search(SearchArgs),
    /// Re-check a stored trace against its coloring.
    Validate(ValidateArgs),
    /// Quick end-to-end checks of every module.
    Selftest,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long, default_value = "ramsey")]
    pub method: String,
    /// Target size of the homogeneous set.
    #[arg(long)]
    pub k: usize,
    /// Coloring file (text, or binary starting with `RCOL`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Uniformity of a generated coloring.
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub c: Option<u8>,
    /// Seed of a generated coloring; required without `--input`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Ramsey method: exact inner extraction (n <= 20).
    #[arg(long)]
    pub exact_inner: bool,
    #[arg(long)]
    pub trace_out: Option<PathBuf>,
    #[arg(long)]
    pub set_out: Option<PathBuf>,
    /// Save the coloring used, text format.
    #[arg(long)]
    pub coloring_out: Option<PathBuf>,
    /// Write `--coloring-out` in the binary format.
    #[arg(long)]
    pub binary: bool,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 2)]
    pub c: u8,
    /// One family only.
    #[arg(long)]
    pub family: Option<String>,
    /// Exact-evaluation budget in bits; defaults to RAMSEY_BIT_BUDGET.
    #[arg(long)]
    pub bit_budget: Option<u64>,
    /// Print exact values in full however long.
    #[arg(long)]
    pub digits: bool,
}

#[derive(Subcommand, Debug)]
pub enum LemmaCommand {
    /// String sums against their bound.
    Sigma {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
        c: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 6])]
        k: Vec<u64>,
        /// Also enumerate strings directly.
        #[arg(long)]
        enumerate: bool,
    },
    /// sum_{b<=n} C(a+b, b) = C(a+n+1, n).
    Pascal {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        n: u64,
    },
    /// Stirling bracket on n!.
    Stirling {
        #[arg(long)]
        n: u64,
    },
    /// Edge sums over colored hypergraphs without homogeneous (k-1)-sets.
    EdgeSum {
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 2)]
        c: u8,
        #[arg(long)]
        k: usize,
        /// Upper bound on R(a-2, k-1, c) for the closed form.
        #[arg(long)]
        r: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub c: u8,
    #[arg(long, default_value_t = 64)]
    pub n_max: u32,
    /// Colorings to enumerate at most.
    #[arg(long, default_value_t = hyperramsey::verify::DEFAULT_COLORING_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Save the lower-bound witness coloring.
    #[arg(long)]
    pub witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub coloring: PathBuf,
}

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Input = 2,
    Budget = 3,
    Invariant = 4,
}

impl Status {
    pub fn of(e: &Error) -> Status {
        match e {
            Error::Input(_) | Error::Parse { .. } => Status::Input,
            Error::Overflow { .. } | Error::Budget(_) => Status::Budget,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match commands::dispatch(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            Status::of(&e)
        }
    };
    ExitCode::from(status as u8)
}
