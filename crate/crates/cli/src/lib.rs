//! Command-line front end for `reesalg`: algebra files in, deterministic
//! plain-text or JSON reports out.

pub mod commands;
pub mod file;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::Output;
pub use file::{AlgebraFile, FileError};

#[derive(Parser, Debug)]
#[command(
    name = "reesalg",
    version,
    about = "Rees algebras, Diff-closures and integral-closure probes"
)]
pub struct Cli {
    /// Emit a JSON document instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Absolute,
    Relative,
    Log,
    Orderfree,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RecipeArg {
    F1,
    F1p,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Diff-closure of an algebra.
    Close {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = VariantArg::Absolute)]
        variant: VariantArg,
        /// Number of leading variables for the relative variant (defaults to the file's split).
        #[arg(long)]
        h: Option<usize>,
        /// Variables for the logarithmic variant (defaults to all).
        #[arg(long, value_delimiter = ',')]
        log_vars: Vec<String>,
        /// Also print reduced bases of the graded pieces 1..=N.
        #[arg(long)]
        bound: Option<u32>,
        /// Drop generators already implied by the others.
        #[arg(long)]
        prune: bool,
    },
    /// Singular locus: membership of a point, the full grid over F_p, or the defining equations.
    Sing {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "grid")]
        point: Option<Vec<String>>,
        #[arg(long)]
        grid: bool,
    },
    /// Coefficient algebra along the file's split.
    Coeff {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RecipeArg::F1p)]
        recipe: RecipeArg,
    },
    /// The invariant lambda of a one-variable algebra.
    Lambda { file: PathBuf },
    /// Integral membership of `elem * W^weight` in a one-variable algebra.
    Member {
        file: PathBuf,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        weight: u32,
    },
    /// Monomial-curve probes comparing the integral closures of two algebras.
    EqualClosure {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Probes the Diff-closures of a certified finite pair `A ⊂ B`.
    MainCheck {
        file_a: PathBuf,
        file_b: PathBuf,
        /// `sat`, `veronese:M` or `witness`.
        #[arg(long)]
        cert: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check inclusion of closure pieces up to this weight (0 skips).
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
}

/// Failures that map to exit code 2.
#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    File(PathBuf, FileError),
    Usage(String),
    Compute(reesalg::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::File(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<reesalg::Error> for CliError {
    fn from(e: reesalg::Error) -> Self {
        CliError::Compute(e)
    }
}

pub fn load(path: &Path) -> Result<AlgebraFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    AlgebraFile::parse(&text).map_err(|e| CliError::File(path.to_path_buf(), e))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    commands::dispatch(&cli.command)
}
