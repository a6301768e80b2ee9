//! Argument parsing and command dispatch. `run` returns the process exit
//! code: 0 success, 1 failed reproduction check or solver failure, 2 usage
//! or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use cascade_core::simulate::{self, SimConfig, SimResult};
use cascade_core::solvers::{self, SweepParam};
use cascade_core::{GameSpec, Kernel, Regime, SolveOptions};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::reproduce;
use crate::spec_io::{self, IoError};

#[derive(Debug, Parser)]
#[command(name = "cascade", version, about = "Persuasion games over an encoder-relay-decoder cascade")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal encoder cost for one regime.
    Solve(SolveArgs),
    /// Optimal value over a range of p0, r1 or r2, as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo play of per-letter strategies over blocks.
    Simulate(SimulateArgs),
    /// Runs the reference checks on the shipped binary game.
    ReproduceBinary(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Points per parameter of the binary encoder grid.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// Tolerance for best-response ties.
    #[arg(long = "tie-tol", default_value_t = cascade_core::DEFAULT_TIE_TOL)]
    pub tie_tol: f64,
}

impl GridArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions { grid: self.grid, tie_tol: self.tie_tol, ..Default::default() }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub regime: Regime,
    /// Writes the full report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Prints the full JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub param: SweepParam,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long)]
    pub regime: Regime,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub spec: PathBuf,
    /// Block length.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Plays the witness of this regime instead of full revelation.
    #[arg(long, conflicts_with = "kernels")]
    pub regime: Option<Regime>,
    /// TOML file with `encoder`, `relay` and `decoder` row-stochastic matrices.
    #[arg(long)]
    pub kernels: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Prints the checks as JSON.
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Core(#[from] cascade_core::Error),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        use cascade_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::Validation { .. } | E::Shape(_) | E::InvalidRange(_) | E::UnknownRegime(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelDoc {
    encoder: Vec<Vec<f64>>,
    relay: Vec<Vec<f64>>,
    decoder: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
struct SimRecord<'a> {
    spec: String,
    strategy: String,
    encoder: Vec<Vec<f64>>,
    relay: Vec<Vec<f64>>,
    decoder: Vec<Vec<f64>>,
    within_3se: [bool; 3],
    #[serde(flatten)]
    result: &'a SimResult,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("CASCADE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| CliError::Usage(format!("CASCADE_THREADS must be a positive integer, got `{v}`")))?;
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    match configure_threads().and_then(|_| dispatch(cli.command, stdout, stderr)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout.write_all(text.as_bytes()).map_err(|e| CliError::Other(e.to_string()))
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Solve(a) => {
            let spec = spec_io::load_spec_file(&a.spec)?;
            let report = solvers::solve(&spec, a.regime, &a.grid.options())?;
            let json = spec_io::to_json(&report)?;
            if let Some(path) = &a.out {
                spec_io::write_file(path, &(json.clone() + "\n"))?;
            }
            if a.json {
                emit(stdout, &(json + "\n"))?;
            } else {
                emit(stdout, &report.to_string())?;
            }
            if let Some(s) = report.elapsed_seconds {
                let _ = writeln!(stderr, "solved in {s:.3}s, {} evaluations", report.evaluations);
            }
            Ok(0)
        }
        Command::Sweep(a) => {
            let spec = spec_io::load_spec_file(&a.spec)?;
            let rows = solvers::sweep(&spec, a.param, a.from, a.to, a.steps, a.regime, &a.grid.options())?;
            let csv = solvers::sweep_csv(&rows);
            match &a.out {
                Some(path) => spec_io::write_file(path, &csv)?,
                None => emit(stdout, &csv)?,
            }
            Ok(0)
        }
        Command::Simulate(a) => {
            let spec = spec_io::load_spec_file(&a.spec)?;
            let (strategy, (encoder, relay, decoder)) = match (&a.regime, &a.kernels) {
                (Some(r), _) => {
                    let rep = solvers::solve(&spec, *r, &SolveOptions::default())?;
                    (format!("witness:{r}"), (rep.encoder, rep.relay, rep.decoder))
                }
                (None, Some(path)) => ("kernels-file".to_string(), kernels_from_file(path)?),
                (None, None) => ("full-revelation".to_string(), full_revelation(&spec)?),
            };
            let cfg = SimConfig {
                n: usize::try_from(a.n).map_err(|_| CliError::Usage("n too large".into()))?,
                trials: usize::try_from(a.trials).map_err(|_| CliError::Usage("trials too large".into()))?,
                seed: a.seed,
                encoder,
                relay,
                decoder,
            };
            let result = simulate::run(&spec, &cfg)?;
            let record = SimRecord {
                spec: a.spec.display().to_string(),
                strategy,
                encoder: cfg.encoder.to_rows(),
                relay: cfg.relay.to_rows(),
                decoder: cfg.decoder.to_rows(),
                within_3se: result.within(3.0),
                result: &result,
            };
            let json = spec_io::to_json(&record)? + "\n";
            match &a.out {
                Some(path) => spec_io::write_file(path, &json)?,
                None => emit(stdout, &json)?,
            }
            Ok(0)
        }
        Command::ReproduceBinary(a) => {
            let checks = reproduce::run(&a.grid.options()).map_err(|e| CliError::Other(e.to_string()))?;
            if a.json {
                emit(stdout, &(spec_io::to_json(&checks)? + "\n"))?;
            } else {
                for c in &checks {
                    emit(stdout, &format!("{c}\n"))?;
                }
            }
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
        }
    }
}

fn kernels_from_file(path: &Path) -> Result<(Kernel, Kernel, Kernel), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    let doc: KernelDoc = toml::from_str(&text).map_err(|e| IoError::Parse(e.message().to_string()))?;
    Ok((Kernel::from_rows(&doc.encoder)?, Kernel::from_rows(&doc.relay)?, Kernel::from_rows(&doc.decoder)?))
}

/// Identity links and a decoder that best-responds to each revealed symbol under `c3`.
pub fn full_revelation(spec: &GameSpec) -> cascade_core::Result<(Kernel, Kernel, Kernel)> {
    if spec.w1_size < spec.u_size || spec.w2_size < spec.u_size {
        return Err(cascade_core::Error::Unsupported(
            "full revelation needs w1_size and w2_size at least u_size".into(),
        ));
    }
    let embed = |rows: usize, cols: usize| {
        let mut p = vec![0.0; rows * cols];
        for r in 0..rows {
            p[r * cols + r.min(cols - 1)] = 1.0;
        }
        Kernel::new(rows, cols, p)
    };
    let mut dec = vec![0.0; spec.w2_size * spec.v_size];
    for w in 0..spec.w2_size {
        let u = w.min(spec.u_size - 1);
        let row = spec.cost3.row(u);
        let best = (0..spec.v_size).fold(0, |b, v| if row[v] < row[b] { v } else { b });
        dec[w * spec.v_size + best] = 1.0;
    }
    Ok((
        embed(spec.u_size, spec.w1_size)?,
        embed(spec.w1_size, spec.w2_size)?,
        Kernel::new(spec.w2_size, spec.v_size, dec)?,
    ))
}
