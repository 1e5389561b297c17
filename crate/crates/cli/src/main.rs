//! `gtc`: construct generalized toric codes, their duals and their minimum
//! distances from the command line.
//!
//! Every subcommand prints a single JSON document on standard output (or one
//! JSON line per record for `search`). Exit status is 0 on success, 2 on
//! usage errors and 3 when a search exceeds its budget.

mod commands;
mod error;
mod search;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "gtc", version, about = "Generalized toric codes over finite fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    MatrixText,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exhaustive,
    Rank,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct CodeArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub r: usize,
    /// Exponent set, e.g. "0,0;1,0;2,0".
    #[arg(long, allow_hyphen_values = true)]
    pub u: String,
}

#[derive(Debug, clap::Args)]
pub struct BudgetArg {
    /// Work budget (codewords or column subsets); overrides GTC_BUDGET.
    #[arg(long, env = "GTC_BUDGET")]
    pub budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Field parameters and the exp table of the primitive element.
    FieldInfo {
        #[arg(long)]
        q: u32,
    },
    /// The evaluation matrix M and the permutation matrix of sigma.
    Matrix {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
    },
    /// Generator and control matrices of C_U.
    Build {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Duality report for C_U.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Recover U from generators of an ideal (JSON list of vectors).
    Recover {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        codewords: PathBuf,
    },
    /// Minimum distance of C_U.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Exhaustive)]
        method: MethodArg,
        /// Also check the column-independence certificate for this d.
        #[arg(long)]
        certify: Option<usize>,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Check that every d-1 control-matrix columns are independent.
    Certify {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        d: usize,
        /// Use the determinant-of-minors form instead of column ranks.
        #[arg(long)]
        minors: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Code of the lattice points of a polytope (JSON file).
    Polytope {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        file: PathBuf,
    },
    /// Sample random U of size k and record their minimum distances.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Append JSONL records here instead of printing them.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// The F_5, r = 2 reference instance, recomputed and self-checked.
    Example,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match commands::run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(err) => report(&err, format),
    }
}

fn report(err: &CliError, format: Format) -> ExitCode {
    eprintln!("gtc: {err}");
    if format == Format::Json {
        let doc = serde_json::to_string(&err.to_json()).expect("error document serializes");
        println!("{doc}");
    }
    ExitCode::from(err.exit_code() as u8)
}
