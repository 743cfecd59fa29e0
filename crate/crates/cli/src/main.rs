//! `latcover`: lattice reduction, Voronoi cells, copy counts and periodic
//! distances from the command line.

mod commands;
mod error;
mod output;
mod svg;
mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "latcover", version, about = "Exact periodic distances for skewed cells")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; CSV is available for `matrix` and `neighbors`.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Cross-check the result against the brute-force oracles and report on
    /// stderr; exits with 1 on disagreement.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// The lattice, given inline, as crystallographic parameters, or as a JSON file.
#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    /// Basis vectors listed one after another, e.g. "1 0 0 1", or identity2 / identity3.
    #[arg(long, allow_hyphen_values = true)]
    pub lattice: Option<String>,
    /// "a b gamma" or "a b c alpha beta gamma", angles in degrees.
    #[arg(long)]
    pub cell_params: Option<String>,
    /// JSON lattice file; takes precedence over the inline forms.
    #[arg(long)]
    pub lattice_file: Option<PathBuf>,
}

/// A primitive cell of the lattice; defaults to the lattice basis itself.
#[derive(Args, Debug, Clone)]
pub struct CellArgs {
    /// Cell vectors listed one after another.
    #[arg(long, allow_hyphen_values = true)]
    pub cell: Option<String>,
    /// JSON cell file in the lattice format; takes precedence over --cell.
    #[arg(long)]
    pub cell_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shortest basis and the unimodular transform to it.
    Reduce(LatticeArgs),
    /// Voronoi-relevant vectors.
    Relevant(LatticeArgs),
    /// Voronoi cell vertices, facets and volume.
    Voronoi(LatticeArgs),
    /// Copy counts needed for a cell.
    Copies {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        cell: CellArgs,
    },
    /// Cells spanned by relevant vectors for which 3^n copies suffice.
    Cells(LatticeArgs),
    /// Report on a single cell.
    CheckCell {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        cell: CellArgs,
    },
    /// Minimum-image distance between two points.
    Dist {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Fractional coordinates of the first point.
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        /// Fractional coordinates of the second point.
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
    },
    /// Pairwise distance matrix of a point file.
    Matrix {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Points as JSON {"frac": [...]} or one point per line.
        #[arg(long)]
        points: PathBuf,
    },
    /// All pairs and images within a cutoff.
    Neighbors {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cutoff: f64,
    },
    /// SVG of a 2D lattice, cell, Voronoi cell and domain D.
    Render {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[command(flatten)]
        cell: CellArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run() -> Result<(), CliError> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version go to stdout with exit 0; everything else is a usage error
            let code = e.exit_code();
            let _ = e.print();
            if code == 0 {
                return Ok(());
            }
            return Err(CliError::Reported);
        }
    };
    let out = commands::dispatch(&cli)?;
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(report) = out.verify {
        for line in &report.lines {
            eprintln!("verify: {line}");
        }
        if !report.ok {
            return Err(CliError::VerifyFailed);
        }
    }
    Ok(())
}

fn main() {
    let code = match run() {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::Reported) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    };
    std::process::exit(code);
}
