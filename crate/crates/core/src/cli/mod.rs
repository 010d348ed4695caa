//! JSON configuration, the `check`, `spectrum` and `converge` runners, and
//! report encoding.
//!
//! Exit status: 0 when every requested check passes, 1 when one fails, 2 on
//! a configuration or evaluation error.

mod config;
mod report;
mod run;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{parse_identity, Config, ConfigError, ConvergenceConfig, RunTolerances, Setup, ToleranceOverrides};
pub use report::{emit_report, report_json, sci, spectrum_csv, Command, Format, Report, Skipped, Verdict, SCHEMA};
pub use run::{run_check, run_converge, run_spectrum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ptlab", version, about = "Check operator identities and spectra of discretized 1D Hamiltonians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// JSON configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Parity conditions and operator identity residuals.
    Check(Common),
    /// Eigenvalues with conjugate-pair matching.
    Spectrum(Common),
    /// Residual of one identity under grid refinement.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Odd grid sizes, e.g. 101,201,401.
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<usize>>,
        /// anti_pseudo, pseudo, pt_symmetry, eta_hermiticity, corollary1 or commutator_tau.
        #[arg(long)]
        identity: Option<String>,
    },
}

impl CliCommand {
    fn common(&self) -> &Common {
        match self {
            CliCommand::Check(c) | CliCommand::Spectrum(c) => c,
            CliCommand::Converge { common, .. } => common,
        }
    }
}

/// Loads the config, runs the command and encodes the report.
pub fn execute(cmd: &CliCommand) -> crate::Result<(Report, Vec<u8>)> {
    let common = cmd.common();
    if common.format == Format::Csv && !matches!(cmd, CliCommand::Spectrum(_)) {
        return Err(ConfigError::CsvNeedsSpectrum.into());
    }
    let setup = Config::load(&common.config)?.setup()?;
    let report = match cmd {
        CliCommand::Check(_) => run_check(&setup)?,
        CliCommand::Spectrum(_) => run_spectrum(&setup)?,
        CliCommand::Converge { n_list, identity, .. } => {
            run_converge(&setup, n_list.as_deref(), identity.as_deref())?
        }
    };
    let bytes = emit_report(&report, common.format)?;
    Ok((report, bytes))
}

/// Runs the parsed command line and returns the process exit status.
pub fn main_with(cli: Cli) -> i32 {
    let (report, bytes) = match execute(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let written = match &cli.command.common().out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| (path.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| ("stdout".to_owned(), e)),
    };
    if let Err((target, e)) = written {
        eprintln!("error: cannot write {target}: {e}");
        return EXIT_ERROR;
    }
    report.verdict().exit_code()
}
