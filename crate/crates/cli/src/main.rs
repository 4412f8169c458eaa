//! `borcherds-kit`: command-line front end for `borcherds-core`.

mod commands;
mod reports;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use borcherds_core::series::DEFAULT_BUDGET;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "borcherds-kit",
    version,
    about = "Exact arithmetic for half-integral weight Borcherds products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format; defaults to json for series-valued commands and text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the canonical JSON result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Maximum number of stored coefficients.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_BUDGET as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Chamber {
    /// Generic chamber vector `a,b,c` (rationals); default (1, 1/10, 1/100, ...).
    #[arg(long, value_name = "a,b,c")]
    pub w0: Option<String>,
    /// Use the opposite chamber `-w0`.
    #[arg(long)]
    pub flip_chamber: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, determinant, discriminant group and criterion for a lattice file.
    LatticeInfo { input: Option<PathBuf> },
    /// Emit the weight-0 input φ_N for the lattice 8Z^N.
    Phi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_name = "p/q")]
        prec: String,
    },
    /// Theta decomposition of a weak Jacobi form into a vector-valued form.
    Decompose { input: Option<PathBuf> },
    /// Principal part of a series file or a vector-valued form file.
    PrincipalPart { input: Option<PathBuf> },
    /// Borcherds congruence N·Σc(0,l) ≡ 0 (mod 24) for a series file.
    Congruence { input: Option<PathBuf> },
    /// Whether 8 divides every inner product of a lattice.
    Criterion { input: Option<PathBuf> },
    /// Weyl vector (A, B, C) of a series file.
    Weyl {
        input: Option<PathBuf>,
        #[command(flatten)]
        chamber: Chamber,
    },
    /// Truncated product expansion of the lift of a series file.
    Lift {
        input: Option<PathBuf>,
        /// Total precision T: monomials with n + m < T are kept.
        #[arg(long, value_name = "p/q")]
        prec: String,
        #[command(flatten)]
        chamber: Chamber,
    },
    /// Consistency checks on a principal-part file.
    ValidatePp { input: Option<PathBuf> },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::LatticeInfo { .. } => "lattice-info",
            Command::Phi { .. } => "phi",
            Command::Decompose { .. } => "decompose",
            Command::PrincipalPart { .. } => "principal-part",
            Command::Congruence { .. } => "congruence",
            Command::Criterion { .. } => "criterion",
            Command::Weyl { .. } => "weyl",
            Command::Lift { .. } => "lift",
            Command::ValidatePp { .. } => "validate-pp",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Phi { .. }
            | Command::Decompose { .. }
            | Command::PrincipalPart { .. }
            | Command::Lift { .. } => Format::Json,
            _ => Format::Text,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("BORCHERDS_KIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "BORCHERDS_KIT_THREADS must be a positive integer, got `{value}`"
            ))
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let format = cli
        .common
        .format
        .unwrap_or_else(|| cli.command.default_format());
    if let Some(path) = &cli.common.out {
        std::fs::write(path, &outcome.json)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let stdout = std::io::stdout();
    let mut stdout = stdout.lock();
    let write = |out: &mut dyn Write, text: &str| {
        out.write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))
    };
    match format {
        Format::Json if cli.common.out.is_none() => {
            write(&mut stdout, &outcome.json)?;
            eprint!("{}", outcome.text);
        }
        Format::Json => eprint!("{}", outcome.text),
        Format::Text => write(&mut stdout, &outcome.text)?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    configure_threads()?;
    let outcome = commands::run(&cli.command, &cli.common)?;
    emit(cli, &outcome)?;
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    std::panic::set_hook(Box::new(|_| {}));
    let name = cli.command.name();
    let result = std::panic::catch_unwind(|| run(&cli));
    match result {
        Ok(Ok(outcome)) => ExitCode::from(outcome.status),
        Ok(Err(e)) => {
            eprintln!("borcherds-kit {name}: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(payload) => {
            let detail = payload
                .downcast_ref::<String>()
                .map(String::as_str)
                .or_else(|| payload.downcast_ref::<&str>().copied())
                .unwrap_or("unknown cause");
            eprintln!("borcherds-kit {name}: InternalError: {detail}");
            ExitCode::from(1)
        }
    }
}
