//! `hopfcert`: command-line front end. Every subcommand prints a report tree
//! of checks and exits 0 on success, 1 if any check failed, 2 on bad input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopfcert::report::{Check, Status};

#[derive(Parser, Debug)]
#[command(name = "hopfcert", version, about = "Certificates for loop-space homology of pinch-map fibres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Opts {
    /// Coefficient prime
    #[arg(long, global = true, default_value_t = 2)]
    pub prime: u32,
    /// Largest degree computed
    #[arg(long, global = true, default_value_t = 40)]
    pub cutoff: usize,
    /// Bottom cell of the cofibre is in dimension n+1
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Top cell of the cofibre is in dimension n+k+1
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true)]
    pub m: Option<u32>,
    #[arg(long, global = true)]
    pub r: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub out: Output,
    /// Relation ledger (TOML); defaults to the shipped π18 ledger
    #[arg(long, global = true)]
    pub ledger: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Poincaré series of a free tensor algebra on generators of degrees
    /// n and n+k+1 (or --degrees)
    Poincare {
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<u32>,
    },
    /// Freeness of the loop-homology generating families in T(V)
    FreeCheck,
    /// β_m·β_m = m·β_m in Z[S_m] (and idempotency of β_m/m mod p when p ∤ m)
    Dynkin,
    /// Stable image of β_m/m on V^{⊗m} against the span of Lie brackets
    Qmax,
    /// Dimensions of the cotensor model of the loop homology of the pinch fibre
    Cotensor,
    /// Generator ladders of the fibre stages and the Serre factorization
    Ladder,
    /// Cell structures of the fibre tower
    Tower,
    /// Main theorem certificate
    Certificate {
        /// Symbol of the attaching class f (a suspension-stable class)
        #[arg(long)]
        class: Option<String>,
    },
    /// Exactness of every sequence fragment recorded in the ledger
    ExactCheck,
    /// Replay of the π18(Σ³CP²) computation from the ledger
    Pi18,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.opts) {
        Ok(check) => {
            match cli.opts.out {
                Output::Text => print!("{}", check.to_text()),
                Output::Json => println!("{}", check.to_json()),
            }
            exit_code(&check)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn exit_code(check: &Check) -> ExitCode {
    if check.status == Status::Fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
