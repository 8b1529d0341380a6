//! Command-line front end: data subcommands writing CSV, figure presets and
//! the validation suite.
//!
//! Settings are layered from lowest to highest precedence: built-in
//! defaults, the `--figure` preset, the `--config` file, then individual
//! flags. Every configuration key has a flag of the same name (`abs_tol`
//! is spelled `--abs-tol`, with `--abs_tol` accepted as an alias).
//!
//! Exit codes: 0 success, 1 validation failure, 2 configuration error,
//! 3 numerical failure.

mod commands;
mod figures;
mod settings;
mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{Context, Point};
pub use figures::{Figure, FIGURE_IDS};
pub use settings::{Scale, Settings, SweepSpec, SweepVariable, CONFIG_KEYS};
pub use table::Table;

use crate::model::Geometry;
use crate::simulator::with_thread_cap;
use crate::validate::{run_check, run_suite, SuiteOptions, CHECK_NAMES};

/// Failures of a command-line invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] crate::Error),

    #[error("at sweep value {x}: {source}")]
    AtPoint { x: f64, source: Box<CliError> },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 3 for failures of the numerical machinery, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => 3,
            CliError::AtPoint { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "secrecy-geom",
    version,
    about = "Secure connectivity, secrecy capacity and interference correlation at the corner of a quadrant and in the bulk",
    after_help = "Run with --figure <ID> and no subcommand to regenerate a figure preset."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Subcommand, Clone, PartialEq)]
pub enum Command {
    /// Interference mean and variance at the receiver and the eavesdropper.
    Stats,
    /// Correlation coefficient of the interference at the two locations.
    Rho,
    /// Connection probabilities of the receiver and the eavesdropper.
    Pconn,
    /// Probability of secure connectivity.
    Psc,
    /// Average capacity with and without secrecy.
    Capacity,
    /// Monte Carlo estimates with standard errors.
    Mc,
    /// Runs the self-check suite and prints one line per check.
    Validate {
        /// Smaller grids and 10^5 Monte Carlo samples.
        #[arg(long)]
        quick: bool,
        /// Run only the given check ids (repeatable).
        #[arg(long = "check", value_name = "ID")]
        checks: Vec<usize>,
        #[arg(long, hide = true)]
        inject_c3_flip: bool,
    },
}

/// Options shared by all subcommands; each mirrors a configuration key.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Figure preset: 2, 3, 4a, 4b, 5a, 5b, 6, 7a, 7b, 8 or 9.
    #[arg(long, global = true, value_name = "ID")]
    pub figure: Option<Figure>,
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write CSV here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// corner or bulk.
    #[arg(long, global = true)]
    pub geometry: Option<Geometry>,
    /// Intensity of interferers.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Pathloss exponent (> 2).
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    /// Transmitter-receiver distance.
    #[arg(long, global = true)]
    pub d0: Option<f64>,
    /// Receiver-eavesdropper distance.
    #[arg(long, global = true)]
    pub u: Option<f64>,
    /// Codeword rate in bits.
    #[arg(long, global = true)]
    pub rt: Option<f64>,
    /// Secrecy rate in bits.
    #[arg(long, global = true)]
    pub rs: Option<f64>,
    /// Receiver SIR threshold; overrides the value derived from rt.
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Eavesdropper SIR threshold; overrides the value derived from rt and rs.
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Monte Carlo sample count.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long = "truncation-radius", alias = "truncation_radius", global = true)]
    pub truncation_radius: Option<f64>,
    /// Antithetic fading pairs in Monte Carlo.
    #[arg(long, global = true)]
    pub antithetic: bool,
    #[arg(long = "abs-tol", alias = "abs_tol", global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long = "rel-tol", alias = "rel_tol", global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long = "max-subdivisions", alias = "max_subdivisions", global = true)]
    pub max_subdivisions: Option<usize>,

    /// Sweep variable: u, gamma, mu, sigma or rs.
    #[arg(long, global = true)]
    pub sweep: Option<SweepVariable>,
    #[arg(long, global = true)]
    pub lo: Option<f64>,
    #[arg(long, global = true)]
    pub hi: Option<f64>,
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// linear or log.
    #[arg(long, global = true)]
    pub scale: Option<Scale>,
}

impl Options {
    fn as_settings(&self) -> Settings {
        Settings {
            geometry: self.geometry,
            lambda: self.lambda,
            eta: self.eta,
            d0: self.d0,
            u: self.u,
            rt: self.rt,
            rs: self.rs,
            mu: self.mu,
            sigma: self.sigma,
            seed: self.seed,
            samples: self.samples,
            truncation_radius: self.truncation_radius,
            antithetic: self.antithetic.then_some(true),
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            sweep: self.sweep,
            lo: self.lo,
            hi: self.hi,
            points: self.points,
            scale: self.scale,
        }
    }

    /// Defaults, preset, config file and flags merged in that order.
    pub fn settings(&self) -> Result<Settings, CliError> {
        let mut merged = self.figure.map(Figure::preset).unwrap_or_default();
        if let Some(path) = &self.config {
            merged = merged.overlay(&Settings::from_file(path)?);
        }
        Ok(merged.overlay(&self.as_settings()))
    }
}

/// Produces the CSV table for a data subcommand or figure preset.
pub fn table(command: Option<&Command>, options: &Options) -> Result<Table, CliError> {
    let ctx = Context::new(options.settings()?)?;
    match (options.figure, command) {
        (Some(figure), None) => figure.build(&ctx),
        (Some(figure), Some(_)) => Err(CliError::Config(format!(
            "--figure {figure} is a complete preset; drop the subcommand"
        ))),
        (None, Some(Command::Stats)) => commands::stats(&ctx),
        (None, Some(Command::Rho)) => commands::rho(&ctx),
        (None, Some(Command::Pconn)) => commands::pconn(&ctx),
        (None, Some(Command::Psc)) => commands::psc(&ctx),
        (None, Some(Command::Capacity)) => commands::capacity(&ctx),
        (None, Some(Command::Mc)) => commands::mc(&ctx),
        (None, Some(Command::Validate { .. })) => Err(CliError::Config("validate produces no table".into())),
        (None, None) => Err(CliError::Config(
            "nothing to do: give a subcommand or --figure (see --help)".into(),
        )),
    }
}

fn validate(options: &Options, quick: bool, checks: &[usize], flip_c3: bool) -> Result<i32, CliError> {
    let settings = options.settings()?;
    let suite = SuiteOptions {
        quick,
        flip_c3,
        seed: settings.seed.unwrap_or(SuiteOptions::default().seed),
        spec: settings.quadrature()?,
    };
    if let Some(bad) = checks.iter().find(|&&id| id == 0 || id > CHECK_NAMES.len()) {
        return Err(CliError::Config(format!("no check with id {bad}")));
    }
    let mut stdout = std::io::stdout().lock();
    let mut print = |line: &dyn std::fmt::Display| -> std::io::Result<()> {
        writeln!(stdout, "{line}")?;
        stdout.flush()
    };
    let reports = if checks.is_empty() {
        let mut io_result = Ok(());
        let reports = run_suite(&suite, |r| {
            if io_result.is_ok() {
                io_result = print(r);
            }
        });
        io_result?;
        reports
    } else {
        let mut reports = Vec::new();
        for &id in checks {
            let r = run_check(id, &suite);
            print(&r)?;
            reports.push(r);
        }
        reports
    };
    let failed = reports.iter().filter(|r| !r.passed).count();
    print(&format_args!("{} passed, {failed} failed", reports.len() - failed))?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    if let Some(Command::Validate {
        quick,
        checks,
        inject_c3_flip,
    }) = &cli.command
    {
        return validate(&cli.options, *quick, checks, *inject_c3_flip);
    }
    let table = table(cli.command.as_ref(), &cli.options)?;
    match &cli.options.out {
        Some(path) => table.write_csv(std::fs::File::create(path)?)?,
        None => table.write_csv(std::io::stdout().lock())?,
    }
    Ok(0)
}

/// Runs a parsed invocation and returns the process exit code; errors are
/// reported on standard error.
pub fn run(cli: &Cli) -> i32 {
    match with_thread_cap(|| execute(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
