//! `gsd`: generalized Schmidt decomposition of multi-qubit pure states.

mod input;
mod report;
mod sweep;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gsd_core::oracle::GridSpec;
use gsd_core::{GsdError, SolverConfig, Tol};
use serde::Deserialize;

use input::Source;

#[derive(Parser)]
#[command(version, about = "Generalized Schmidt decomposition of n-qubit pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: decomposition, classification, per-qubit predicates
    Decompose(Analyze),
    /// Entanglement class and, for the W3 family, the region with its boundary distances
    Classify(Analyze),
    /// List the stationary product states found
    Enumerate(Analyze),
    /// CSV of (a,b,c,d,g,t1,t2,t3,h,phi,region) over a grid of the parameter simplex
    Sweep(SweepArgs),
}

#[derive(Args)]
struct Analyze {
    /// Family and parameters: `w3 a b c d`, `wn n a [b]` or `ghz-ext a b c d`
    #[arg(allow_negative_numbers = true, required_unless_present = "state", conflicts_with = "state")]
    family: Vec<String>,
    /// State JSON `{"n": .., "amps": [[re, im], ..]}`, or a previous report to re-ingest
    #[arg(long, value_name = "FILE")]
    state: Option<PathBuf>,
    /// Run the brute-force oracle as a cross-check (at most 4 qubits)
    #[arg(long)]
    verify_oracle: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SweepArgs {
    /// `w3` or `ghz-ext`
    family: String,
    /// Divisions of the simplex of squared parameters
    #[arg(long, default_value_t = 10)]
    grid: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long, env = "GSD_SEED")]
    seed: Option<u64>,
    /// Residual tolerance for convergence of the solver
    #[arg(long)]
    tol: Option<f64>,
    /// Closed forms for the named families, or the numerical solver for everything
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    solver: Method,
    /// JSON file with optional `solver`, `tolerances` and `oracle` blocks
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Numeric,
}

#[derive(Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    solver: SolverConfig,
    tolerances: Tol,
    oracle: GridSpec,
}

/// Everything an analysis needs besides the state.
pub struct Settings {
    pub solver: SolverConfig,
    pub tol: Tol,
    pub oracle: GridSpec,
    pub method: Method,
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn usage(error: anyhow::Error) -> Self {
        Self { code: 2, error }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<GsdError>() {
            Some(GsdError::SolverDiverged { .. }) => 3,
            Some(GsdError::InvalidParams(_) | GsdError::InvalidConfig(_) | GsdError::ZeroNorm | GsdError::NonFinite)
            | Some(GsdError::Dimension { .. } | GsdError::UnsupportedArity { .. } | GsdError::Index { .. }) => 2,
            _ if error.downcast_ref::<input::InputError>().is_some() => 2,
            _ => 1,
        };
        Self { code, error }
    }
}

impl Common {
    fn settings(&self) -> Result<Settings, Failure> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(Failure::usage)?;
                serde_json::from_str::<ConfigFile>(&text)
                    .with_context(|| format!("parsing config {}", path.display()))
                    .map_err(Failure::usage)?
            }
            None => ConfigFile::default(),
        };
        let mut solver = file.solver;
        if let Some(r) = self.restarts {
            solver.restarts = r;
        }
        if let Some(s) = self.seed {
            solver.rng_seed = s;
        }
        if let Some(t) = self.tol {
            solver.residual_tol = t;
        }
        solver.validate().map_err(|e| Failure::usage(e.into()))?;
        file.oracle.validate().map_err(|e| Failure::usage(e.into()))?;
        Ok(Settings { solver, tol: file.tolerances, oracle: file.oracle, method: self.solver })
    }

    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => {
                let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                f.write_all(text.as_bytes())?;
            }
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn source(args: &Analyze) -> Result<Source, Failure> {
    let src = match &args.state {
        Some(path) => Source::from_file(path),
        None => Source::from_family(&args.family),
    };
    src.map_err(Failure::from)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Decompose(args) => {
            let settings = args.common.settings()?;
            let src = source(&args)?;
            let rep = report::analyze(&src, &settings, args.verify_oracle)?;
            let text = if args.common.json { report::to_json(&rep)? } else { rep.render() };
            args.common.emit(&text)?;
        }
        Command::Classify(args) => {
            let settings = args.common.settings()?;
            let src = source(&args)?;
            let rep = report::analyze(&src, &settings, args.verify_oracle)?;
            let text = if args.common.json { report::to_json(&rep.classification)? } else { rep.render_classification(true) };
            args.common.emit(&text)?;
        }
        Command::Enumerate(args) => {
            let settings = args.common.settings()?;
            let src = source(&args)?;
            let list = report::enumerate(&src, &settings)?;
            let text = if args.common.json { report::to_json(&list)? } else { report::render_enumeration(&list) };
            args.common.emit(&text)?;
        }
        Command::Sweep(args) => {
            let settings = args.common.settings()?;
            let family = sweep::Family::parse(&args.family).map_err(|e| Failure::usage(e.into()))?;
            let csv = sweep::run(family, args.grid, &settings).map_err(Failure::from)?;
            args.common.emit(&csv)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
