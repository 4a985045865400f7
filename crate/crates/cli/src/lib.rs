//! Command-line front end for `syzygy-core`.
//!
//! A job file names an algebra and a set of modules over it:
//!
//! ```json
//! {
//!   "algebra": {"mode": "polynomial_quotient", "p": 5, "variables": ["x"], "relations": ["x^4"]},
//!   "modules": {"M": {"type": "cyclic", "relations": ["x"]}},
//!   "seed": 0
//! }
//! ```
//!
//! Exit codes: 0 certified success, 2 certified negative, 3 budget
//! exhausted, 1 input error.

pub mod commands;
pub mod job;

use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::{execute, Outcome, Verdict};
pub use job::{AlgebraDescriptor, JobSpec, ModuleDescriptor, ModuleRef};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) => m,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "syzygy", version, about = "Modules over finite local algebras")]
pub struct Cli {
    /// Job file (JSON); `-` reads standard input.
    #[arg(short = 'f', long = "file", global = true)]
    pub file: Option<String>,
    /// Overrides the job's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print the result as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing; only the exit code reports the outcome.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Limits {
    /// Resolution length.
    #[arg(long, default_value_t = 6)]
    pub steps: usize,
    /// Search budget (syzygy steps or orbit length).
    #[arg(long, default_value_t = 10)]
    pub budget: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Questions about the algebra.
    #[command(subcommand)]
    Ring(RingCommand),
    /// Computations with one or two named modules.
    #[command(subcommand)]
    Module(ModuleCommand),
    /// Classes in the Grothendieck module.
    #[command(subcommand)]
    Jclass(JclassCommand),
}

#[derive(Debug, Clone, Subcommand)]
pub enum RingCommand {
    /// Local invariants of the algebra.
    Check,
    /// Check `(1 - t^2)` on sample modules (all job modules by default).
    HypersurfaceCheck {
        samples: Vec<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Search cyclic modules `R/(f)` for an eventually periodic one.
    FindPeriodic {
        /// Number of generators `f` to try.
        #[arg(long, default_value_t = 16)]
        generators: usize,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum ModuleCommand {
    Resolve {
        name: String,
        #[command(flatten)]
        limits: Limits,
    },
    Betti {
        name: String,
        #[command(flatten)]
        limits: Limits,
    },
    Syzygy {
        name: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    Cosyzygy {
        name: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    Decompose {
        name: String,
    },
    Iso {
        a: String,
        b: String,
    },
    Period {
        name: String,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum JclassCommand {
    NormalForm {
        name: String,
    },
    Equal {
        a: String,
        b: String,
    },
    Torsion {
        name: String,
        #[command(flatten)]
        limits: Limits,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read_job(file: Option<&str>) -> Result<String, CliError> {
    let path = file.ok_or_else(|| CliError::Input("no job file given (use -f FILE)".into()))?;
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Parse arguments, run the command and render its result.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return RunOutput { code, stdout, stderr };
        }
    };
    let result = read_job(cli.file.as_deref()).and_then(|text| {
        let mut job = JobSpec::parse(&text)?;
        if let Some(seed) = cli.seed {
            job.seed = seed;
        }
        execute(&job, &cli.command)
    });
    match result {
        Ok(outcome) => {
            let stdout = match (cli.quiet, cli.json) {
                (true, _) => String::new(),
                (false, true) => format!("{}\n", outcome.json),
                (false, false) => outcome.text.clone(),
            };
            RunOutput { code: outcome.verdict.exit_code(), stdout, stderr: String::new() }
        }
        Err(e) => RunOutput {
            code: 1,
            stdout: String::new(),
            stderr: if cli.quiet { String::new() } else { format!("error: {e}\n") },
        },
    }
}
