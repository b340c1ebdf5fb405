//! Command-line front end for `collinear-core`: pointset and report file
//! formats, the subcommands, and independent re-verification of reports.
//!
//! Exit codes: 0 success, 1 searched and not found (or a verification
//! failed), 2 a hypothesis of the method is violated, 3 bad input.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod pointset;
pub mod report;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("content hash mismatch for {path}: report has {expected}, file has {actual}")]
    HashMismatch { path: String, expected: String, actual: String },
}

pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "collinear", version, about = "Collinear triples, configuration search and conic extraction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Omit the timestamp line (reports become byte-reproducible).
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SearchArgs {
    /// Density δ as an integer or p/q; default |T|/n².
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub block_size: Option<usize>,
    #[arg(long)]
    pub skinny_bound: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Derandomized selection instead of seeded random choices.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a planted instance (points.txt) and its sidecar (planted.txt).
    Generate {
        /// grid | conic-instance | ksystem | degenerate-family | mutually-avoiding | ngon | pascal-ttt | parallel
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// All collinear (a, b, c) triples.
    Triples {
        #[arg(long)]
        input: PathBuf,
        /// Also write the `i j k` export.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relabel the sets so the monotonicity rules hold.
    Order {
        #[arg(long)]
        input: PathBuf,
        /// Also write the reordered pointset.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// (6,3) configurations: every one, or the skinny pipeline.
    #[command(name = "search-663")]
    Search663 {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        skinny: bool,
        /// Maximum number of configurations recorded.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// A tic-tac-toe configuration.
    SearchTtt {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// auto | direct | pipeline
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// A k-system (default k = 3, block size k).
    SearchKsystem {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The conic through the centres of concurrent 3-branches.
    ExtractConic {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// t1 | t2 | auto
        #[arg(long, default_value = "auto")]
        mode: String,
    },
    /// Directions determined by pairs of a convex set A.
    Directions {
        #[arg(long)]
        input: PathBuf,
        /// `all` or a file of `i j` lines.
        #[arg(long, default_value = "all")]
        pairs: String,
        /// Run the two-sided conic pipeline (exact inputs).
        #[arg(long)]
        conic: bool,
        #[arg(long, default_value_t = collinear_core::geometry::approx::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Re-check every claim of a report against its input.
    Verify {
        target: PathBuf,
        /// Use this pointset instead of the one named in the report.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

/// Parses `argv`, runs the subcommand, writes the report and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli.command) {
        Ok(mut report) => {
            if !cli.no_timestamp {
                report.timestamp = std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .ok()
                    .map(|d| d.as_secs());
            }
            let text = report.render();
            match &cli.report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_INPUT;
                    }
                }
                None => print!("{text}"),
            }
            report.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
