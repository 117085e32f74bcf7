//! Command-line front end: argument definitions, file formats and command
//! dispatch. `main` only parses arguments and prints an [`Outcome`].
//!
//! Exit codes: 0 success, 2 malformed input, 3 metric or predicate failure
//! (including "no hub"), 4 size bound exceeded.

pub mod commands;
pub mod demos;
pub mod format;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use ultrastar::enumeration::DEFAULT_ENUMERATION_BOUND;
use ultrastar::symmetry::DEFAULT_ISOMETRY_BOUND;

use commands::{Failure, DEFAULT_SEED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ultrastar", version, about = "Finite ultrametric spaces and labeled star graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a distance matrix and print its spectrum.
    Check { file: PathBuf },
    /// List hubs; exits 3 when there are none.
    Hubs { file: PathBuf },
    /// Emit a generating labeled star.
    Synthesize {
        file: PathBuf,
        /// Center, by point name or index; defaults to the lowest hub.
        #[arg(long)]
        hub: Option<String>,
        /// Also emit a second, non-isomorphic generating star.
        #[arg(long)]
        witness_nonunique: bool,
    },
    /// Isometry group versus star automorphism group.
    Isogroups {
        file: PathBuf,
        /// Labeled star file; defaults to the star synthesized at the lowest hub.
        #[arg(long)]
        star: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ISOMETRY_BOUND)]
        bound: usize,
    },
    /// Decide weak similarity; exits 3 when not similar.
    Weaksim { file1: PathBuf, file2: PathBuf },
    /// List weak-similarity classes of n-point spaces.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
    /// Check the four-point characterization on every class up to n-max points.
    Conjecture {
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
        /// Write one certificate file per counterexample into this directory.
        #[arg(long)]
        certificate_dir: Option<PathBuf>,
    },
    /// Truncated labeled ray with labels 1, 1/2, ..., 1/N.
    Ray {
        #[arg(long = "N")]
        n: usize,
    },
    /// Run a worked example.
    Demo {
        #[arg(value_enum)]
        name: demos::Demo,
    },
    /// Emit a random space file.
    Random {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        levels: u32,
        /// Draw from spaces generated by labeled stars.
        #[arg(long)]
        us: bool,
    },
}

#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    use Command::*;
    let result = match &cli.command {
        Check { file } => commands::check(file),
        Hubs { file } => commands::hubs(file),
        Synthesize { file, hub, witness_nonunique } => {
            commands::synthesize(file, hub.as_deref(), *witness_nonunique)
        }
        Isogroups { file, star, bound } => commands::isogroups(file, star.as_deref(), *bound),
        Weaksim { file1, file2 } => commands::weaksim(file1, file2),
        Enumerate { n, oracle, jobs, bound } => commands::enumerate(*n, *oracle, *jobs, *bound),
        Conjecture { n_max, jobs, bound, certificate_dir } => {
            commands::conjecture(*n_max, *jobs, *bound, certificate_dir.as_deref())
        }
        Ray { n } => commands::ray(*n),
        Demo { name } => demos::run(*name),
        Random { seed, n, levels, us } => commands::random(*seed, *n, *levels, *us),
    };
    match result {
        Ok(report) => {
            let mut stdout = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
            };
            stdout.push('\n');
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(Failure { code, message }) => Outcome { code, stdout: String::new(), stderr: format!("error: {message}\n") },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_PARSE } else { 0 };
            let rendered = e.to_string();
            if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            }
        }
    }
}
