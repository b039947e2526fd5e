//! Command implementations behind the `wavepaths` binary.

pub mod render;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use wavepaths::classify::{default_window, sweep, ClassifyError};
use wavepaths::closedform::ClosedFormError;
use wavepaths::kinematics::KinematicsError;
use wavepaths::verify::{verify_all, verify_current, VerifyConfig, VerifyError, VerifyReport};
use wavepaths::{classify, integrate, rhs_lab, ClosedFormTrajectory, OdeSettings, ParticleState};

use render::Row;

/// Exit code for a failed verification.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Exit code for bad arguments or configurations.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "wavepaths", version, about = "Particle paths under linear shallow-water waves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample one trajectory as CSV, SVG or a JSON report.
    #[command(allow_negative_numbers = true)]
    Trace(TraceArgs),
    /// Print the regime of a current strength.
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Compare closed forms against the RK4 oracle.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Tabulate regime, drift and loop count over a range of currents.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    JsonReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    JsonReport,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub c0: f64,
    #[arg(long, default_value_t = 0.3)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.1)]
    pub z0: f64,
    /// Time window; defaults to a regime-dependent window.
    #[arg(long = "t", num_args = 2, value_names = ["T_START", "T_END"])]
    pub t: Option<Vec<f64>>,
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Integrate with RK4 instead of evaluating the closed form.
    #[arg(long)]
    pub numeric: bool,
    /// RK4 step size.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub c0: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["c0", "all"])))]
pub struct VerifyArgs {
    #[arg(long)]
    pub c0: Option<f64>,
    /// Run every regime representative.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 0.3)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.1)]
    pub z0: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long)]
    pub step: f64,
    #[arg(long, default_value_t = 0.3)]
    pub x0: f64,
    #[arg(long, default_value_t = 0.1)]
    pub z0: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed => EXIT_VERIFY_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs a parsed command, writing results to `stdout` or the `--out` file.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Trace(args) => {
            let body = trace(&args)?;
            emit(args.out.as_deref(), &body, stdout)
        }
        Command::Classify(args) => {
            let regime = classify(args.c0)?;
            let body = match args.format {
                ReportFormat::Text => format!("{regime}\n"),
                ReportFormat::JsonReport => json(&regime),
            };
            emit(None, &body, stdout)
        }
        Command::Verify(args) => {
            let config = VerifyConfig {
                x0: args.x0,
                z0: args.z0,
                ..VerifyConfig::default()
            };
            let report = match args.c0 {
                Some(c0) if !args.all => verify_current(c0, &config)?,
                _ => verify_all(&config)?,
            };
            let body = match args.format {
                ReportFormat::Text => verify_text(&report),
                ReportFormat::JsonReport => json(&report),
            };
            emit(args.out.as_deref(), &body, stdout)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
        Command::Sweep(args) => {
            let rows = sweep(args.from, args.to, args.step, args.x0, args.z0)?;
            let mut body = String::from("c0,regime,drift,loops\n");
            for row in rows {
                let drift = row.drift.map(render::number).unwrap_or_default();
                body.push_str(&format!(
                    "{},{},{},{}\n",
                    render::number(row.c0),
                    row.regime,
                    drift,
                    row.loops
                ));
            }
            emit(args.out.as_deref(), &body, stdout)
        }
    }
}

#[derive(Serialize)]
struct TraceReport<'a> {
    c0: f64,
    x0: f64,
    z0: f64,
    method: &'static str,
    regime: String,
    case: String,
    window: (f64, f64),
    samples: &'a [Row],
}

pub fn trace(args: &TraceArgs) -> Result<String, CliError> {
    if args.n < 2 {
        return Err(CliError::Config(format!("sample count must be at least 2, got {}", args.n)));
    }
    if !(args.h > 0.0 && args.h.is_finite()) {
        return Err(CliError::Config(format!("step size must be positive, got {}", args.h)));
    }
    if !(args.c0.is_finite() && args.x0.is_finite() && args.z0.is_finite()) || args.z0 < 0.0 {
        return Err(CliError::Config("c0, x0, z0 must be finite with z0 >= 0".into()));
    }
    let traj = ClosedFormTrajectory::build(args.c0, args.x0, args.z0)?;
    let window = match &args.t {
        Some(t) => (t[0], t[1]),
        None => default_window(&traj),
    };
    if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
        return Err(CliError::Config(format!(
            "time window must satisfy t_start < t_end, got [{}, {}]",
            window.0, window.1
        )));
    }
    let rows = if args.numeric {
        numeric_rows(args, window)?
    } else {
        traj.sample(window.0, window.1, args.n)
    };
    let regime = classify(args.c0)?;
    Ok(match args.format {
        Format::Csv => render::csv(&rows),
        Format::Svg => render::svg(
            &rows,
            &format!("c0 = {}, x0 = {}, z0 = {}: {regime}", args.c0, args.x0, args.z0),
        ),
        Format::JsonReport => json(&TraceReport {
            c0: args.c0,
            x0: args.x0,
            z0: args.z0,
            method: if args.numeric { "rk4" } else { "closed-form" },
            regime: regime.to_string(),
            case: format!("{:?}", traj.case()),
            window,
            samples: &rows,
        }),
    })
}

/// RK4 samples at `n` evenly spaced times, integrated from the initial
/// state at `t = 0`.
fn numeric_rows(args: &TraceArgs, window: (f64, f64)) -> Result<Vec<Row>, CliError> {
    let settings = OdeSettings::new(args.h)?;
    let advance = |state: ParticleState, t: f64| -> Result<ParticleState, CliError> {
        let path = integrate(state, args.c0, t, settings)?;
        Ok(*path.last().expect("integrate returns the initial state at least"))
    };
    let mut state = advance(ParticleState::new(args.x0, args.z0, 0.0), window.0)?;
    let span = window.1 - window.0;
    let last = (args.n - 1) as f64;
    let mut rows = Vec::with_capacity(args.n);
    for i in 0..args.n {
        let t = if i + 1 == args.n {
            window.1
        } else {
            window.0 + span * (i as f64 / last)
        };
        state = advance(state, t)?;
        let (dx, dz) = rhs_lab(&state, args.c0);
        rows.push([state.t, state.x, state.z, dx, dz]);
    }
    Ok(rows)
}

fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&format!(
            "{:<5} c0={:<5} {:<27} max_error={:.3e} tolerance={:.0e}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.c0,
            c.name,
            c.max_error,
            c.tolerance
        ));
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", report.checks.len()));
    out
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(path: Option<&Path>, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
