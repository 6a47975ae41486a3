// `!(x > y)` guards also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod fail;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use borel_core::{Complex64, Exec};
use clap::{Parser, Subcommand};

use commands::{OdeArgs, OracleCall, StokesArgs, ThimbleArgs, VerifyArgs};
use fail::{CliError, ErrorKind, EXIT_CHECK, EXIT_OK};

/// Numerical Borel summation, thimble integrals and Stokes constants.
#[derive(Parser)]
#[command(name = "borel", version)]
struct Cli {
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Borel-sum a level-1 ODE at one characteristic rate.
    Ode {
        #[arg(long)]
        spec: PathBuf,
        /// Characteristic rate alpha.
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        root: Complex64,
        /// Poincaré order N.
        #[arg(long, default_value_t = 6)]
        order: usize,
        /// Frequencies, comma-separated.
        #[arg(long, value_delimiter = ',', value_parser = args::parse_complex, allow_hyphen_values = true)]
        z: Vec<Complex64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        /// Bessel order as m/n, overriding the problem file.
        #[arg(long)]
        mn: Option<String>,
        /// Cantilever frequency, overriding the problem file.
        #[arg(long)]
        omega: Option<f64>,
        /// Write the Borel-plane solution as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Thimble integral of e^{-z f} nu, directly and through the Borel plane.
    Thimble {
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Phase polynomial, e.g. "u^3-3u".
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// Amplitude polynomial.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        /// Critical point.
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        a: Option<Complex64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, value_delimiter = ',', value_parser = args::parse_complex, allow_hyphen_values = true)]
        z: Vec<Complex64>,
        /// Write the traced thimble as JSON polylines.
        #[arg(long)]
        polylines: Option<PathBuf>,
    },
    /// Measure the Stokes constant between two characteristic rates.
    Stokes {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        alpha: Complex64,
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        beta: Complex64,
        /// Cut direction; defaults to arg(beta - alpha).
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long)]
        mn: Option<String>,
        /// Lateral offset of the two rays.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run the acceptance criteria.
    Verify {
        /// Run every criterion (the default).
        #[arg(long, conflicts_with = "only")]
        all: bool,
        /// Comma-separated criterion keys or numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Multiplies every threshold.
        #[arg(long, default_value_t = 1.0)]
        tol_scale: f64,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an independent special-function reference.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Modified Bessel K_mu(z).
    BesselK {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Gauss 2F1(a, b; c; x).
    #[command(name = "2f1")]
    Hyp2f1 {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, value_parser = args::parse_complex, allow_hyphen_values = true)]
        x: Complex64,
    },
    /// Airy Ai(y).
    Airy {
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
    },
}

fn ratio(s: Option<String>) -> Result<Option<f64>, CliError> {
    s.as_deref().map(spec::parse_ratio).transpose()
}

fn nonempty(z: Vec<Complex64>) -> Option<Vec<Complex64>> {
    (!z.is_empty()).then_some(z)
}

fn dispatch(cmd: Command, exec: Exec) -> Result<(commands::Outcome, bool), CliError> {
    let out = match cmd {
        Command::Ode { spec, root, order, z, theta, mn, omega, csv } => commands::ode(
            OdeArgs { spec: &spec, root, order, z: nonempty(z), theta, mu: ratio(mn)?, omega, csv: csv.as_deref() },
            exec,
        )?,
        Command::Thimble { spec, f, nu, a, theta, z, polylines } => commands::thimble(
            ThimbleArgs { spec: spec.as_deref(), f, nu, a, theta, z: nonempty(z), polylines: polylines.as_deref() },
            exec,
        )?,
        Command::Stokes { spec, alpha, beta, theta, mn, eps } => {
            commands::stokes(StokesArgs { spec: &spec, alpha, beta, theta, mu: ratio(mn)?, eps }, exec)?
        }
        Command::Verify { all: _, only, tol_scale, json } => {
            let out = commands::verify(VerifyArgs { only, tol_scale, json }, exec)?;
            return Ok((out, json));
        }
        Command::Oracle { which } => commands::oracle(match which {
            OracleCommand::BesselK { mu, z } => OracleCall::BesselK { mu, z },
            OracleCommand::Hyp2f1 { a, b, c, x } => OracleCall::Hyp2f1 { a, b, c, x },
            OracleCommand::Airy { y } => OracleCall::Airy { y },
        })?,
    };
    Ok((out, true))
}

/// Write a line to stdout; a closed pipe is not an error worth reporting.
pub(crate) fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let err = CliError::new(ErrorKind::Usage, e.to_string().trim());
            emit(&err.to_json().to_string());
            return ExitCode::from(err.exit_code() as u8);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let exec = match cli.threads {
        Some(0) => {
            emit(&CliError::new(ErrorKind::Usage, "--threads must be at least 1").to_json().to_string());
            return ExitCode::from(fail::EXIT_INPUT as u8);
        }
        Some(1) => Exec::Sequential,
        Some(n) => {
            if let Err(e) = borel_core::exec::configure_threads(n) {
                emit(&CliError::new(ErrorKind::Usage, e).to_json().to_string());
                return ExitCode::from(fail::EXIT_INPUT as u8);
            }
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    match dispatch(cli.command, exec) {
        Ok((out, print_json)) => {
            if print_json {
                emit(&serde_json::to_string_pretty(&out.report).expect("serializable"));
            }
            ExitCode::from(if out.passed { EXIT_OK } else { EXIT_CHECK } as u8)
        }
        Err(e) => {
            emit(&e.to_json().to_string());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
