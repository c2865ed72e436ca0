use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use upp2_cli::commands;

/// Enumerate rectangular structures and central groupoids (unique-2-path
/// digraphs; 0-1 matrices with A² = J) up to isomorphism.
///
/// Log level via the usual RUST_LOG environment variable.
#[derive(Parser)]
#[command(name = "upp2", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all n×m rectangular structures up to isomorphism as JSONL.
    Enumerate {
        n: usize,
        m: usize,
        /// Output file; structures go to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker count for the subtree search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Extract all central groupoids of order n² up to isomorphism.
    FilterCg {
        n: usize,
        /// Output file; witnesses go to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker count for the subtree search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a multiplication table or 0-1 matrix file.
    Verify { file: PathBuf },
    /// Export structures or witnesses from a JSONL file as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Directory for one .dot file per record; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate { n, m, out, jobs } => {
            commands::cmd_enumerate(*n, *m, out.as_deref(), (*jobs).max(1))
        }
        Command::FilterCg { n, out, jobs } => {
            commands::cmd_filter_cg(*n, out.as_deref(), (*jobs).max(1))
        }
        Command::Verify { file } => commands::cmd_verify(file),
        Command::ExportDot { file, out } => commands::cmd_export_dot(file, out.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
