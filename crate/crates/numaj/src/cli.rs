//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use numaj_core::mixing::{GridSpec, SigmaLevel, DEFAULT_GRID_POINTS};
use numaj_core::suite::{SuiteConfig, DEFAULT_SEED};

use crate::commands::{self, ReportOptions, DEFAULT_ALPHA_GRID};
use crate::data::{load_magnitudes, load_params, DATA_DIR_ENV};
use crate::document::Format;
use crate::{CliError, EXIT_INPUT, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "numaj", version, about = "Majorization and entropic uncertainty bounds for lepton mixing")]
#[command(after_help = format!(
    "Default data files are read from ${DATA_DIR_ENV} when set, else the built-in copies are used.\n\
     Exit codes: 0 success, 2 input error, 3 internal invariant, 4 property violation."
))]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Parameter file (TOML). Defaults to the built-in global fit.
    #[arg(long, global = true)]
    pub params: Option<PathBuf>,
    /// Output format. `figure1` defaults to csv, the rest to table.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound report at the best-fit point.
    Report {
        #[command(flatten)]
        common: Common,
        /// Add Rényi and Tsallis bounds of this order.
        #[arg(long)]
        alpha_order: Option<f64>,
        /// Efficiency of the flavor detector (the other defaults to 1).
        #[arg(long)]
        kappa_f: Option<f64>,
        /// Efficiency of the mass detector (the other defaults to 1).
        #[arg(long)]
        kappa_m: Option<f64>,
        /// Magnitude-interval file (TOML) for the modulus check.
        #[arg(long)]
        magnitudes: Option<PathBuf>,
    },
    /// Sum- and product-type Rényi bounds along an order grid.
    Figure1 {
        #[command(flatten)]
        common: Common,
        /// Order grid `start:stop:step`; a row at 0.001 is always added.
        #[arg(long, default_value = DEFAULT_ALPHA_GRID)]
        alpha: String,
    },
    /// Seeded Monte-Carlo check of every bound.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random pairs per dimension and inefficiency states; memory
        /// states are half of this.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Replace omega by the uniform vector to exercise failure reporting.
        #[arg(long, hide = true)]
        corrupt_omega: bool,
    },
    /// Grid scans of the zeta_2 and eta identifications.
    Scan {
        #[command(flatten)]
        common: Common,
        /// Confidence region: 1 or 3.
        #[arg(long, default_value_t = 1)]
        sigma: u8,
        /// Points per parameter axis.
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        /// Skip the golden-section refinement of the maxima.
        #[arg(long)]
        no_refine: bool,
    },
}

fn emit(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("stdout: {e}")))
        }
    }
}

/// Runs one parsed command.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Report { common, alpha_order, kappa_f, kappa_m, magnitudes } => {
            let params = load_params(common.params.as_deref())?;
            let magnitudes = load_magnitudes(magnitudes.as_deref())?;
            let doc = commands::report(&params, &magnitudes, ReportOptions { alpha_order, kappa_f, kappa_m })?;
            emit(&common, &doc.render(common.format.unwrap_or(Format::Table))?)
        }
        Command::Figure1 { common, alpha } => {
            let params = load_params(common.params.as_deref())?;
            let doc = commands::figure1(&params, &commands::parse_alpha_grid(&alpha)?)?;
            emit(&common, &doc.render(common.format.unwrap_or(Format::Csv))?)
        }
        Command::Verify { common, seed, samples, corrupt_omega } => {
            if samples == 0 {
                return Err(CliError::Input("--samples must be positive".into()));
            }
            let config = SuiteConfig {
                seed,
                samples,
                inefficiency_samples: samples,
                memory_samples: samples.div_ceil(2),
                corrupt_omega,
            };
            let v = commands::verify(&config)?;
            emit(&common, &v.summary.render(common.format.unwrap_or(Format::Table))?)?;
            match v.counterexample {
                Some(cx) => Err(CliError::Violation(cx)),
                None => Ok(()),
            }
        }
        Command::Scan { common, sigma, grid, no_refine } => {
            let params = load_params(common.params.as_deref())?;
            let level = SigmaLevel::from_number(sigma)?;
            let grid = GridSpec::new(grid)?.with_refinement(!no_refine);
            let doc = commands::scan(&params, level, &grid)?;
            emit(&common, &doc.render(common.format.unwrap_or(Format::Table))?)
        }
    }
}

/// Parses `args`, runs the command and reports errors on standard error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("numaj: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn main() -> ExitCode {
    main_with(std::env::args_os())
}
