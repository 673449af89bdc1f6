mod commands;
mod svg;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::verify::Suite;

/// Optimal phase-retrieval frames in the plane and the convex polygons that
/// encode them.
#[derive(Debug, Parser)]
#[command(name = "optiframe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate sign vectors with vanishing root-of-unity sum, up to shift and flip.
    Enumerate {
        m: usize,
        /// List every solution under its class.
        #[arg(long)]
        raw: bool,
        /// Write the class report as JSON.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Class counts with the minimal condition number and diameter ratio.
    Table {
        #[arg(long, default_value_t = 15, value_name = "M")]
        max_m: usize,
        /// Emit CSV instead of the text table.
        #[arg(long)]
        csv: bool,
    },
    /// Optimal polygon for one class.
    Polygon(ShapeArgs),
    /// Optimal frame for one class.
    Frame(ShapeArgs),
    /// Condition number of an m×2 matrix read from CSV.
    Beta {
        #[arg(long, value_name = "FILE.csv")]
        matrix: PathBuf,
    },
    /// Condition number of the harmonic frame E_m.
    Harmonic { m: usize },
    /// Run a built-in consistency suite; exits 1 on failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, clap::Args)]
struct ShapeArgs {
    m: usize,
    /// Class index in ascending canonical order.
    #[arg(long, default_value_t = 0)]
    class: usize,
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("OPTIFRAME_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        anyhow::anyhow!("OPTIFRAME_THREADS must be a positive integer, got {raw:?}")
    })?;
    anyhow::ensure!(n > 0, "OPTIFRAME_THREADS must be positive");
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate { m, raw, json } => commands::enumerate(m, raw, json.as_deref()),
        Command::Table { max_m, csv } => commands::table(max_m, csv),
        Command::Polygon(a) => commands::polygon(a.m, a.class, a.svg.as_deref(), a.json.as_deref()),
        Command::Frame(a) => commands::frame(a.m, a.class, a.svg.as_deref(), a.json.as_deref()),
        Command::Beta { matrix } => commands::beta(&matrix),
        Command::Harmonic { m } => commands::harmonic(m),
        Command::Verify { suite } => verify::run(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<verify::VerificationFailed>() => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
