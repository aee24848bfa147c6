//! `nilsum` command-line front end.
//!
//! Exit codes: 0 success, 2 proven obstruction (the input is not a sum of
//! two nilpotents), 1 usage, parse or other error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nilsum::limit::DEFAULT_MAX_LEVEL;

use report::{Outcome, Report};

#[derive(Parser)]
#[command(
    name = "nilsum",
    version,
    about = "Sums of two nilpotents: matrix decompositions, a limit ring of matrix algebras and a finite ring corpus"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks (ring axioms above 256 elements).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest level 2^n of the limit ring that may be materialized.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a matrix as a sum of two nilpotents, or prove it impossible.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Decide via the single-nonzero-row criterion for row K (1-based).
        #[arg(long, value_name = "K")]
        single_row: Option<usize>,
    },
    /// Operations in the limit of M_{2^n}(GF(2)) under A -> diag(A, A).
    Limit {
        #[command(subcommand)]
        op: LimitOp,
    },
    /// Check the nilpotent-sum structure results on a ring corpus.
    Corpus {
        /// Corpus file, one ring per line; the shipped corpus if omitted.
        #[arg(long, value_name = "FILE")]
        config: Option<PathBuf>,
    },
    /// A nilpotent quaternion matrix whose trace is not nilpotent.
    QuaternionDemo,
    /// Reduce a matrix to unit-subdiagonal form by similarity.
    Hessenberg {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum LimitOp {
    /// Split a non-identity element into two nilpotents.
    Decompose {
        #[arg(long, visible_alias = "in", value_name = "FILE")]
        matrix: PathBuf,
        /// Expected level of the input matrix.
        #[arg(long)]
        level: Option<u32>,
    },
    /// Canonical (smallest level) representative.
    Canon {
        #[arg(long, visible_alias = "in", value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long)]
        level: Option<u32>,
    },
    /// Product of two elements.
    Mul {
        #[arg(long, value_name = "FILE")]
        left: PathBuf,
        #[arg(long, value_name = "FILE")]
        right: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Decompose { input, single_row } => commands::decompose(input, *single_row),
        Command::Limit { op } => {
            let ring = nilsum::limit::LimitRing::new(cli.max_level);
            match op {
                LimitOp::Decompose { matrix, level } => {
                    commands::limit_decompose(&ring, matrix, *level)
                }
                LimitOp::Canon { matrix, level } => commands::limit_canon(&ring, matrix, *level),
                LimitOp::Mul { left, right } => commands::limit_mul(&ring, left, right),
            }
        }
        Command::Corpus { config } => commands::corpus(config.as_deref(), cli.seed),
        Command::QuaternionDemo => commands::quaternion_demo(),
        Command::Hessenberg { input } => commands::hessenberg(input),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(report) => {
            let out = if cli.json {
                report.to_json() + "\n"
            } else {
                report.text.clone()
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::from(match report.outcome {
                Outcome::Success => 0,
                Outcome::Obstruction => 2,
                Outcome::Failure => 1,
            })
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
