use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use descent_cli::commands::{self, CliError};
use descent_cli::{selftest, Model};
use descent_core::curves::Convention;

/// Exact computations for cover descent: braids, monodromy obstructions
/// and Weil descent data.
#[derive(Parser)]
#[command(name = "descent", version)]
struct Args {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Elliptic isomorphism convention: u2u3 is (x, y) -> (u^2 x, u^3 y).
    #[arg(long, global = true, default_value = "u2u3")]
    convention: Convention,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// B4 on the homology of the elliptic double cover; extra braids may come from a file.
    BraidElliptic { file: Option<PathBuf> },
    /// Coset actions of the subgroups in a document.
    CosetAction { file: PathBuf },
    /// Field-of-definition conditions for extensions with a cover H.
    DefinedOver { file: PathBuf },
    /// Obstruction to extending a monodromy over an extension.
    Obstruction { file: PathBuf },
    /// Weil cocycle condition and induced action of descent data.
    Weil { file: PathBuf },
    /// Candidate descent maps for the superelliptic family with parameters m, n, q.
    #[command(alias = "kontogeorgis")]
    ConjDescent { m: usize, n: usize, q: usize },
    /// Run the built-in worked examples.
    Selftest,
}

fn load(path: &Path) -> Result<Model, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Model::parse(&text).map_err(|d| CliError::Input(format!("{}: {d}", path.display())))
}

fn run(args: &Args) -> Result<(String, u8), CliError> {
    let report = match &args.command {
        Command::BraidElliptic { file } => {
            let model = file.as_deref().map(load).transpose()?;
            commands::braid_elliptic(model.as_ref())?
        }
        Command::CosetAction { file } => commands::coset_action_report(&load(file)?)?,
        Command::DefinedOver { file } => commands::defined_over(&load(file)?)?,
        Command::Obstruction { file } => commands::obstruction(&load(file)?)?,
        Command::Weil { file } => commands::weil(&load(file)?, args.convention)?,
        Command::ConjDescent { m, n, q } => commands::conj_descent(*m, *n, *q)?,
        Command::Selftest => {
            let checks = selftest::run();
            let status = if checks.iter().all(|c| c.passed) {
                0
            } else {
                2
            };
            return Ok((selftest::report(&checks), status));
        }
    };
    Ok((report, 0))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (text, status) = match run(&args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("descent: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match &args.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("descent: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(status)
}
