//! `cliffconic`: command-line front end.
//!
//! Every command prints a JSON report on stdout and a one-line summary on
//! stderr. Exit status: 0 success, 1 invalid input, 2 mathematical failure,
//! 3 internal invariant violation.

mod commands;
mod input;
mod pool;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cliffconic::ErrorClass;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] cliffconic::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn class(&self) -> ErrorClass {
        match self {
            CliError::Input(_) => ErrorClass::Input,
            CliError::Library(e) => e.class(),
            CliError::Internal(_) => ErrorClass::Internal,
        }
    }

    fn exit_code(&self) -> u8 {
        match self.class() {
            ErrorClass::Input => 1,
            ErrorClass::Mathematical => 2,
            ErrorClass::Internal => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cliffconic",
    version,
    about = "Even Clifford algebras of conic bundles over the plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input document (JSON); `-` reads stdin.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    pub input: PathBuf,
    /// Base point `x:y:z`.
    #[arg(long)]
    pub point: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a form or net document.
    Validate(InputArg),
    /// Twist the form so its value bundle is the determinant of V.
    Normalize(InputArg),
    /// Discriminant curve (det A for a net).
    Disc(InputArg),
    /// Rank, conic type and algebra type of one fiber.
    Fiber(PointArgs),
    /// Algebra type of one fiber.
    Classify(PointArgs),
    /// Divide all 3x3 minors of the Brauer-Severi matrix by the conic equation.
    BsvVerify {
        input: Option<PathBuf>,
        /// Use the form with six independent symbolic entries.
        #[arg(long, conflicts_with = "input")]
        symbolic: bool,
    },
    /// The trace pairing -Adj Q.
    TracePairing(InputArg),
    /// Recover Q from its trace pairing.
    Recover(InputArg),
    /// Numerical invariants of a del Pezzo type.
    Invariants {
        #[arg(long = "type")]
        tag: String,
    },
    /// Generate an input document for a del Pezzo type.
    Catalog {
        #[arg(long = "type")]
        tag: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Field of definition (default 101).
        #[arg(long, conflicts_with = "rational")]
        prime: Option<u64>,
        /// Generate over the rationals instead.
        #[arg(long)]
        rational: bool,
    },
    /// Hilbert series of the graded algebra of sections.
    Hilbert {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Census of fiber types over every point of P^2(F_p).
    Scan {
        input: PathBuf,
        /// Reduce the document modulo this prime (default: its own field).
        #[arg(long)]
        prime: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Normalize(_) => "normalize",
            Command::Disc(_) => "disc",
            Command::Fiber(_) => "fiber",
            Command::Classify(_) => "classify",
            Command::BsvVerify { .. } => "bsv-verify",
            Command::TracePairing(_) => "trace-pairing",
            Command::Recover(_) => "recover",
            Command::Invariants { .. } => "invariants",
            Command::Catalog { .. } => "catalog",
            Command::Hilbert { .. } => "hilbert",
            Command::Scan { .. } => "scan",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let name = cli.command.name();
    let outcome = commands::run(&cli.command);
    let mut report = match &outcome {
        Ok(out) => json!({ "command": name, "status": "ok", "payload": out.payload }),
        Err(e) => json!({
            "command": name,
            "status": "error",
            "error": { "class": format!("{:?}", e.class()), "message": e.to_string() },
        }),
    };
    if cli.timing {
        report["timing_ms"] = Value::from(start.elapsed().as_secs_f64() * 1e3);
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("reports serialize")
    );
    match outcome {
        Ok(out) => {
            eprintln!("{name}: {}", out.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{name}: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
