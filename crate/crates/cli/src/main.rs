use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lbh_cli::commands::{self, check_tol, CliError};
use lbh_cli::report::canonical_json;

#[derive(Parser)]
#[command(
    name = "lbh",
    version,
    about = "Normalisers and bisections in finite groupoid algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a groupoid file and check the groupoid and cocycle axioms.
    Validate { path: PathBuf },
    /// Isotropy, Cartan checks and, for non-effective groupoids, a witness normaliser.
    Analyze {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Print canonical JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Write the witness element, if any, to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Print the Gauss normaliser of the cyclic group of prime order P.
    Gauss {
        #[arg(short = 'p', value_parser = clap::value_parser!(u64).range(1..=1000))]
        p: u64,
        /// Check n n* = n* n = P δ₀ in exact arithmetic.
        #[arg(long)]
        verify: bool,
    },
    /// Fourier analysis of m(z) = (z − 2z²)/|z − 2z²| and the bounded Laurent sweep.
    DemoIntegers {
        /// Number of sample points on the circle, a power of two.
        #[arg(long, default_value_t = 16384)]
        samples: usize,
        /// Magnitude above which a Fourier coefficient counts as non-zero.
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Test whether an element normalises the unit algebra.
    CheckNormaliser {
        groupoid: PathBuf,
        element: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
}

fn render(value: &impl serde::Serialize, json: bool) -> String {
    if json {
        canonical_json(value)
    } else {
        commands::text_report(value)
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Validate { path } => commands::validate(&path),
        Command::Analyze {
            path,
            tol,
            json,
            witness_out,
        } => {
            let tol = check_tol(tol)?;
            let loaded = commands::load(&path)?;
            let analysis = commands::analyze(&loaded, tol)?;
            if let (Some(out), Some(witness)) = (&witness_out, &analysis.witness) {
                commands::write_json(out, witness)?;
            }
            Ok(render(&analysis.report, json))
        }
        Command::Gauss { p, verify } => commands::gauss(p, verify),
        Command::DemoIntegers { samples, tol, json } => {
            let report = commands::demo_integers(samples, check_tol(tol)?)?;
            Ok(render(&report, json))
        }
        Command::CheckNormaliser {
            groupoid,
            element,
            tol,
            json,
        } => {
            let tol = check_tol(tol)?;
            let loaded = commands::load(&groupoid)?;
            let n = commands::load_element(&element, &loaded.groupoid)?;
            Ok(render(&commands::check_normaliser(&loaded, &n, tol)?, json))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
