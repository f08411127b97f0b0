//! Command-line front end for the `djrsp` simulator.
//!
//! Four modes share one CSV schema (see [`report::CSV_HEADER`]):
//!
//! * `point` evaluates a single parameter set,
//! * `sweep` evaluates a λ × a1 grid,
//! * `figure` writes the grid behind one of the fidelity figures,
//! * `verify` compares simulation and closed forms over the full grid.
//!
//! Exit codes: 0 on success, 1 on verification or I/O failure, 2 on usage
//! errors.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use thiserror::Error;

pub mod config;
pub mod figures;
pub mod report;

use config::{Args, Mode, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot write {0}: {1}")]
    Io(String, #[source] std::io::Error),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("write failed: {0}")]
    Write(#[from] std::io::Error),

    #[error(transparent)]
    Simulation(#[from] djrsp::Error),

    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// Parses `args` (program name first) and runs the requested mode.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match SweepConfig::from_args(parsed).and_then(|cfg| execute(&cfg, stdout, stderr)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let CliError::Usage(_) = e {
                let _ = writeln!(stderr, "\n{}", Args::command().render_usage());
            }
            e.exit_code()
        }
    }
}

fn execute(
    cfg: &SweepConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match cfg.mode {
        Mode::Point | Mode::Sweep | Mode::Figure => {
            let rows = report::evaluate_rows(cfg)?;
            report::emit_csv(&rows, cfg.output_path.as_deref(), stdout)
        }
        Mode::Verify => verify(cfg, stdout, stderr),
    }
}

fn verify(
    cfg: &SweepConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let mut worst: Option<djrsp::analysis::FidelityResult> = None;
    let mut ok = true;
    for kind in cfg.noise_kinds.iter().flatten() {
        let summary = report::verify_kind(cfg, *kind)?;
        let verdict = if summary.passes() { "PASS" } else { "FAIL" };
        writeln!(
            stdout,
            "{kind:<12} points={:<6} branches={:<6} max_abs_err={:.3e} {verdict}",
            summary.points,
            summary.branches,
            summary.max_abs_err()
        )?;
        ok &= summary.passes();
        if let Some(w) = summary.worst {
            if worst.as_ref().is_none_or(|cur| w.abs_err > cur.abs_err) {
                worst = Some(w);
            }
        }
    }
    if ok {
        return Ok(());
    }
    if let Some(w) = worst {
        writeln!(
            stderr,
            "worst grid point: noise={} lambda={} a1={} theta0={} theta1={} m={} n={} f_sim={} f_closed={} abs_err={:.3e}",
            w.noise_kind.map_or("none".into(), |k| k.to_string()),
            w.lambda,
            w.spec.a1(),
            w.spec.theta0(),
            w.spec.theta1(),
            w.m,
            w.n,
            w.f_sim,
            w.f_closed,
            w.abs_err
        )?;
    }
    Err(CliError::VerificationFailed)
}
