mod commands;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Options;

/// Koszul homology, the degree-five resolution of the residue field, and
/// derived invariants of graded quotient rings.
#[derive(Parser, Debug)]
#[command(name = "koszulres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,

    /// Override the degree cutoff of the ring file.
    #[arg(long, global = true, value_name = "D")]
    cutoff: Option<usize>,

    /// Largest homological degree reported (1 to 5).
    #[arg(long, global = true, value_name = "I", default_value_t = 5)]
    max_hdeg: usize,

    /// Override the coefficient field (`QQ` or `GF(p)`).
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,

    /// Add per-stage wall-clock timings to the report.
    #[arg(long, global = true)]
    timing: bool,

    /// Corrupt the resolution before verification.
    #[arg(long, global = true, hide = true, value_name = "FAULT")]
    inject_fault: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a ring file and print its Hilbert function.
    RingCheck { file: PathBuf },
    /// Koszul homology invariants and the closed-form numeric layer.
    Invariants { file: PathBuf },
    /// Build the resolution through degree five.
    Resolution {
        file: PathBuf,
        /// Check complex, exactness, minimality and the syzygy oracle.
        #[arg(long)]
        verify: bool,
    },
    /// Constrained triple Massey products in degree four.
    Massey { file: PathBuf },
    /// Betti numbers of the residue field by direct syzygy computation.
    OracleBetti { file: PathBuf, n: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        json: cli.json,
        cutoff: cli.cutoff,
        max_hdeg: cli.max_hdeg,
        field: cli.field,
        timing: cli.timing,
        inject_fault: cli.inject_fault,
    };
    let result = match cli.command {
        Command::RingCheck { file } => commands::run(&file, &opts, commands::Task::RingCheck),
        Command::Invariants { file } => commands::run(&file, &opts, commands::Task::Invariants),
        Command::Resolution { file, verify } => {
            commands::run(&file, &opts, commands::Task::Resolution { verify })
        }
        Command::Massey { file } => commands::run(&file, &opts, commands::Task::Massey),
        Command::OracleBetti { file, n } => {
            commands::run(&file, &opts, commands::Task::Oracle { n })
        }
    };
    match result {
        Ok(output) => {
            print!("{}", output.text);
            if output.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
