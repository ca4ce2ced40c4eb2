mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "ppk", version, about = "Planar group presentations: recognition, enumeration and verification")]
pub struct Cli {
    /// Line-delimited JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Defaults as `key = value` lines; flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for `enumerate` and `verify`.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Special,
    Generic,
    General,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a decorated presentation against the planarity conditions.
    Check {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        decoration: PathBuf,
        /// Skip the comparison of a relator with its own translates.
        #[arg(long)]
        no_self_crossings: bool,
        /// Also reject relators that are factors of an inverted relator.
        #[arg(long)]
        strict_subwords: bool,
    },
    /// Decide whether two relators cross.
    Cross {
        #[arg(long)]
        decoration: PathBuf,
        #[arg(long)]
        w: String,
        #[arg(long)]
        z: String,
        /// Use the explicit-embedding oracle instead of the alignment decider.
        #[arg(long)]
        oracle: bool,
    },
    /// Search for a special decoration accepted by the checker.
    FindSpecial {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        max_candidates: Option<u64>,
    },
    /// Stream planar presentations within a budget as JSON lines.
    Enumerate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        max_generators: usize,
        #[arg(long)]
        max_relators: usize,
        #[arg(long)]
        max_total_length: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Build the Cayley graph of a finite group and write it as DOT or GraphML.
    Cayley {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Coset enumeration strategy.
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Test a graph for planarity.
    Planar {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        emit_rotation: Option<PathBuf>,
        /// Planarity tester.
        #[arg(long)]
        tester: Option<String>,
    },
    /// Read a special presentation off a consistent planar embedding.
    Extract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Check, build the Cayley graph, test planarity and hinge separation.
    Verify {
        #[arg(long)]
        decoration: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
        #[arg(long)]
        no_self_crossings: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}
