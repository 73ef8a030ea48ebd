//! Command-line front end: bundle files, validators and strictification
//! reports.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::CliError;
pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "cosegal", version, about = "Validate and strictify lax diagrams of rational chain complexes")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every structural equation of a bundle file.
    Validate { file: PathBuf },
    /// Co-Segal, excellence and weak-equivalence predicates.
    Check(CheckArgs),
    /// The free lax diagram on the underlying bundle and its adjunction.
    Gamma { file: PathBuf },
    /// Strictify at a cut and verify the comparison to the input.
    Strictify(StrictifyArgs),
    /// Strictify a symmetric functor to a commutative monoid.
    Commutative {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        cut: usize,
    },
    /// The coequalizer of the endpoint inclusions of the interval.
    Counterexample,
    /// Betti numbers per sequence and every verdict.
    Report { file: PathBuf },
    /// Write one of the built-in diagrams as a bundle file.
    Fixture(FixtureArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Every structure map is a quasi-isomorphism.
    #[arg(long)]
    pub cosegal: bool,
    /// U-cofibrant, or equivalent to such through the witness.
    #[arg(long)]
    pub excellent: bool,
    /// The witness (or the strictification map) is a weak equivalence on
    /// homs between distinct objects.
    #[arg(long)]
    pub wex: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Proj,
    Ex,
}

#[derive(Debug, Args)]
pub struct StrictifyArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub cut: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Proj)]
    pub mode: ModeArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureKind {
    Cylinder,
    WeakStrict,
    SymmetricCylinder,
    Constant,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(value_enum)]
    pub kind: FixtureKind,
    #[arg(long, default_value_t = 3)]
    pub truncation: usize,
    /// Comma-separated object names.
    #[arg(long, default_value = "A,B", value_delimiter = ',')]
    pub objects: Vec<String>,
    /// Output path; the bundle goes to standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    commands::dispatch(&cli.command)
}
