//! `liepool`: batch front end for closure, symmetry adaptation, direct
//! interaction sets, ordering scans and the two-electron model pipeline.
//!
//! Exit codes: 0 success, 1 I/O or internal error, 2 invalid input,
//! 3 a dimension, qubit or factor cap was exceeded, 4 a model stage failed.

mod commands;
mod error;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "liepool",
    version,
    about = "Lie subalgebras of qubit and fermionic generator pools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report destination; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Expected qubit count; also the mode count for fermion blocks without a layout header.
    #[arg(long, global = true)]
    qubits: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commutator closure of a generator file.
    Closure {
        #[arg(long)]
        input: PathBuf,
        /// Largest allowed dimension; defaults to 4^N - 1.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_dim: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Closure followed by symmetry adaptation.
    Symmetrize {
        /// Generator file or a closure report.
        #[arg(long)]
        input: PathBuf,
        /// Comma list of ne, sz, s2, splus, sminus, or `singlet` for all five; `none` for no symmetries.
        #[arg(long, default_value = "ne,sz,s2")]
        symmetries: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_dim: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Direct interaction set classes of a Hamiltonian at a reference state.
    Dis {
        /// Hamiltonian in Pauli text format.
        #[arg(long)]
        input: PathBuf,
        /// Reference basis state; character j is qubit j.
        #[arg(long)]
        ref_bitstring: String,
        #[command(flatten)]
        common: Common,
    },
    /// Optimize every ordering of an ansatz.
    Orderscan {
        /// Ansatz JSON.
        #[arg(long)]
        input: PathBuf,
        /// fidelity:<statefile> or energy:<hamfile>.
        #[arg(long)]
        objective: String,
        /// Overrides the ansatz file's reference.
        #[arg(long)]
        ref_bitstring: Option<String>,
        /// base:starts, e.g. 20191:32.
        #[arg(long)]
        seed_schedule: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in two-electron model pipeline.
    Model {
        /// Skip symmetry adaptation and scan both su(2) blocks instead.
        #[arg(long)]
        no_symmetry: bool,
        /// Also scan the fermionic generators, including the 2-1-1 ordering.
        #[arg(long)]
        fermionic_211: bool,
        #[arg(long)]
        seed_schedule: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("LIEPOOL_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        CliError::input(format!(
            "LIEPOOL_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Other(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Closure {
            input,
            max_dim,
            common,
        } => commands::closure(&input, max_dim, &common),
        Command::Symmetrize {
            input,
            symmetries,
            max_dim,
            common,
        } => commands::symmetrize(&input, &symmetries, max_dim, &common),
        Command::Dis {
            input,
            ref_bitstring,
            common,
        } => commands::dis(&input, &ref_bitstring, &common),
        Command::Orderscan {
            input,
            objective,
            ref_bitstring,
            seed_schedule,
            common,
        } => commands::orderscan(
            &input,
            &objective,
            ref_bitstring.as_deref(),
            seed_schedule.as_deref(),
            &common,
        ),
        Command::Model {
            no_symmetry,
            fermionic_211,
            seed_schedule,
            common,
        } => commands::model(
            !no_symmetry,
            fermionic_211,
            seed_schedule.as_deref(),
            &common,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("liepool: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
