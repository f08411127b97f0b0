//! Grid evaluation and CSV output.

use std::io::Write;

use djrsp::analysis::{self, compare_point, GridSummary};
use djrsp::{Bit, NoiseKind, NoiseScenario, Qubit, TargetStateSpec};
use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::CliError;

pub const CSV_HEADER: [&str; 11] = [
    "noise", "lambda", "a1", "theta0", "theta1", "m", "n", "p_branch", "f_sim", "f_closed",
    "abs_err",
];

/// One grid point before evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub kind: Option<NoiseKind>,
    pub lambda: f64,
    pub a1: f64,
    pub theta0: f64,
    pub theta1: f64,
}

/// One CSV row: a single branch at a single grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub point: GridPoint,
    pub m: Option<Bit>,
    pub n: Option<Bit>,
    pub p_branch: f64,
    pub f_sim: Option<f64>,
    pub f_closed: Option<f64>,
    pub abs_err: Option<f64>,
}

/// Formats a float with 17 significant digits, which round-trips exactly.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt<T>(v: Option<T>, f: impl Fn(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

impl Row {
    pub fn fields(&self) -> [String; 11] {
        let p = &self.point;
        [
            p.kind.map_or("none".to_string(), |k| k.to_string()),
            fmt_num(p.lambda),
            fmt_num(p.a1),
            fmt_num(p.theta0),
            fmt_num(p.theta1),
            opt(self.m, |b| b.to_string()),
            opt(self.n, |b| b.to_string()),
            fmt_num(self.p_branch),
            opt(self.f_sim, fmt_num),
            opt(self.f_closed, fmt_num),
            opt(self.abs_err, fmt_num),
        ]
    }
}

/// Grid points in output order: kind, then λ, then a1, then phases.
pub fn grid_points(cfg: &SweepConfig) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for &kind in &cfg.noise_kinds {
        for &lambda in &cfg.lambda_grid {
            for &a1 in &cfg.a1_grid {
                for &(theta0, theta1) in &cfg.theta_pairs {
                    out.push(GridPoint {
                        kind,
                        lambda,
                        a1,
                        theta0,
                        theta1,
                    });
                }
            }
        }
    }
    out
}

/// Evaluates all four branches at one point.
pub fn evaluate_point(point: &GridPoint, qubits: &[Qubit]) -> djrsp::Result<Vec<Row>> {
    let spec = TargetStateSpec::from_a1(point.a1, point.theta0, point.theta1)?;
    let scenario = match point.kind {
        Some(kind) => NoiseScenario::uniform(kind, point.lambda, qubits)?,
        None => NoiseScenario::noiseless(),
    };
    Ok(analysis::evaluate(&spec, &scenario)?
        .into_iter()
        .map(|e| {
            let closed = e.f_closed.is_some();
            Row {
                point: *point,
                m: closed.then_some(e.m),
                n: closed.then_some(e.n),
                p_branch: e.prob,
                f_sim: e.f_sim,
                f_closed: e.f_closed,
                abs_err: e.abs_err(),
            }
        })
        .collect())
}

/// Evaluates the whole configured grid in parallel, keeping grid order.
/// Figures for amplitude damping keep only rows of their `m`.
pub fn evaluate_rows(cfg: &SweepConfig) -> djrsp::Result<Vec<Row>> {
    let per_point: Vec<Vec<Row>> = grid_points(cfg)
        .par_iter()
        .map(|p| evaluate_point(p, &cfg.noisy_qubits))
        .collect::<djrsp::Result<_>>()?;
    let keep_m = cfg.figure.and_then(|f| f.m);
    Ok(per_point
        .into_iter()
        .flatten()
        .filter(|r| keep_m.is_none_or(|m| r.m == Some(m)))
        .collect())
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(rows: &[Row], sink: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Writes rows to `path`, or to `stdout` when no path is configured.
pub fn emit_csv(
    rows: &[Row],
    path: Option<&std::path::Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file =
                std::fs::File::create(p).map_err(|e| CliError::Io(p.display().to_string(), e))?;
            write_csv(rows, std::io::BufWriter::new(file))
        }
        None => write_csv(rows, stdout),
    }
}

/// Runs the comparator for one kind over the configured grid.
pub fn verify_kind(cfg: &SweepConfig, kind: NoiseKind) -> djrsp::Result<GridSummary> {
    let points: Vec<(f64, f64, f64)> = cfg
        .lambda_grid
        .iter()
        .flat_map(|&l| {
            cfg.a1_grid
                .iter()
                .flat_map(move |&a| cfg.theta_pairs.iter().map(move |&(t0, t1)| (l, a, t0 - t1)))
        })
        .collect();
    points
        .par_iter()
        .map(|&(l, a, d)| {
            let mut s = GridSummary::default();
            s.record(compare_point(kind, l, a, d)?);
            Ok(s)
        })
        .try_reduce(GridSummary::default, |a, b| Ok(a.merge(b)))
}
