use std::f64::consts::TAU;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use djrsp::analysis::unit_grid;
use djrsp::{NoiseKind, Qubit};

use crate::figures::Figure;
use crate::CliError;

/// Points per axis of the default λ and a1 grids.
pub const DEFAULT_GRID_POINTS: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Evaluate one (noise, λ, a1, θ0, θ1) point
    Point,
    /// Evaluate a grid and write CSV rows
    Sweep,
    /// Compare simulation against the closed forms over the full grid
    Verify,
    /// Write the data behind one figure
    Figure,
}

/// A noise selection on the command line: a channel kind or `none`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoiseArg(pub Option<NoiseKind>);

impl FromStr for NoiseArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim().eq_ignore_ascii_case("none") {
            return Ok(NoiseArg(None));
        }
        s.parse::<NoiseKind>()
            .map(|k| NoiseArg(Some(k)))
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "djrsp",
    version,
    about = "Joint remote state preparation over a noisy GHZ state: point evaluation, sweeps, figure data and verification"
)]
pub struct Args {
    #[arg(long, value_enum, default_value_t = Mode::Point)]
    pub mode: Mode,

    /// Noise kinds, comma separated: bitflip, phaseflip, depolarizing, amplitude or none
    #[arg(long, value_delimiter = ',')]
    pub noise: Vec<NoiseArg>,

    /// Single noise parameter
    #[arg(long, conflicts_with = "lambda_list")]
    pub lambda: Option<f64>,

    /// Comma-separated noise parameters
    #[arg(long = "lambda-list", value_delimiter = ',')]
    pub lambda_list: Option<Vec<f64>>,

    /// Single amplitude a1 (a0 = sqrt(1 - a1^2))
    #[arg(long, conflicts_with = "a1_list")]
    pub a1: Option<f64>,

    /// Comma-separated amplitudes a1
    #[arg(long = "a1-list", value_delimiter = ',')]
    pub a1_list: Option<Vec<f64>>,

    #[arg(long, default_value_t = 0.0)]
    pub theta0: f64,

    #[arg(long, default_value_t = 0.0)]
    pub theta1: f64,

    /// Qubits the noise acts on, e.g. BC or ABC
    #[arg(long = "noisy-qubits", default_value = "BC")]
    pub noisy_qubits: String,

    /// Figure id for --mode figure (fig2a ... fig5d)
    #[arg(long)]
    pub name: Option<String>,

    /// Output CSV path; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A validated run request.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub noise_kinds: Vec<Option<NoiseKind>>,
    pub lambda_grid: Vec<f64>,
    pub a1_grid: Vec<f64>,
    pub theta_pairs: Vec<(f64, f64)>,
    pub noisy_qubits: Vec<Qubit>,
    pub output_path: Option<PathBuf>,
    pub figure: Option<Figure>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_unit(name: &str, values: &[f64]) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(usage(format!("{name} grid is empty")));
    }
    match values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        Some(v) => Err(usage(format!("{name} value {v} outside [0, 1]"))),
        None => Ok(()),
    }
}

impl SweepConfig {
    pub fn from_args(args: Args) -> Result<Self, CliError> {
        for (name, t) in [("theta0", args.theta0), ("theta1", args.theta1)] {
            if !(0.0..=TAU).contains(&t) {
                return Err(usage(format!("{name} = {t} outside [0, 2pi]")));
            }
        }
        let noisy_qubits =
            Qubit::parse_set(&args.noisy_qubits).map_err(|e| usage(e.to_string()))?;
        if noisy_qubits.is_empty() {
            return Err(usage("--noisy-qubits selects no qubit"));
        }
        let bc_only = noisy_qubits == [Qubit::B, Qubit::C];

        let single_or_list = |one: Option<f64>, list: &Option<Vec<f64>>| match (one, list) {
            (Some(v), _) => Some(vec![v]),
            (None, Some(l)) => Some(l.clone()),
            (None, None) => None,
        };
        let lambdas = single_or_list(args.lambda, &args.lambda_list);
        let a1s = single_or_list(args.a1, &args.a1_list);
        let noise: Vec<Option<NoiseKind>> = args.noise.iter().map(|n| n.0).collect();

        let mut figure = None;
        let (noise_kinds, lambda_grid, a1_grid, theta_pairs) = match args.mode {
            Mode::Point => {
                let [kind] = noise[..] else {
                    return Err(usage("--mode point needs exactly one --noise"));
                };
                let lambda = match (kind, lambdas.as_deref()) {
                    (_, Some(&[l])) => l,
                    (None, None) => 0.0,
                    _ => return Err(usage("--mode point needs a single --lambda")),
                };
                let Some(&[a1]) = a1s.as_deref() else {
                    return Err(usage("--mode point needs a single --a1"));
                };
                (
                    vec![kind],
                    vec![lambda],
                    vec![a1],
                    vec![(args.theta0, args.theta1)],
                )
            }
            Mode::Sweep => {
                let kinds = if noise.is_empty() {
                    NoiseKind::ALL.map(Some).to_vec()
                } else {
                    noise
                };
                (
                    kinds,
                    lambdas.unwrap_or_else(|| unit_grid(DEFAULT_GRID_POINTS)),
                    a1s.unwrap_or_else(|| unit_grid(DEFAULT_GRID_POINTS)),
                    vec![(args.theta0, args.theta1)],
                )
            }
            Mode::Verify => {
                if !bc_only {
                    return Err(usage(
                        "--mode verify needs --noisy-qubits BC (closed forms exist only there)",
                    ));
                }
                let kinds = if noise.is_empty() {
                    NoiseKind::ALL.map(Some).to_vec()
                } else if noise.iter().any(Option::is_none) {
                    return Err(usage("--mode verify takes noise kinds, not none"));
                } else {
                    noise
                };
                let pairs = djrsp::analysis::VERIFY_DTHETAS
                    .iter()
                    .map(|&d| (d, 0.0))
                    .collect();
                (
                    kinds,
                    lambdas.unwrap_or_else(|| unit_grid(DEFAULT_GRID_POINTS)),
                    a1s.unwrap_or_else(|| unit_grid(DEFAULT_GRID_POINTS)),
                    pairs,
                )
            }
            Mode::Figure => {
                let name = args
                    .name
                    .as_deref()
                    .ok_or_else(|| usage("--mode figure needs --name"))?;
                let fig: Figure = name.parse().map_err(usage)?;
                if !bc_only {
                    return Err(usage("figures are defined for noise on B and C only"));
                }
                if !noise.is_empty() && noise != [Some(fig.kind)] {
                    return Err(usage(format!("{} is a {} figure", fig.id, fig.kind)));
                }
                figure = Some(fig);
                (
                    vec![Some(fig.kind)],
                    lambdas.unwrap_or_else(|| fig.default_lambdas()),
                    a1s.unwrap_or_else(|| unit_grid(DEFAULT_GRID_POINTS)),
                    vec![(fig.dtheta, 0.0)],
                )
            }
        };
        check_unit("lambda", &lambda_grid)?;
        check_unit("a1", &a1_grid)?;
        if noise_kinds.is_empty() {
            return Err(usage("no noise kind selected"));
        }
        Ok(Self {
            mode: args.mode,
            noise_kinds,
            lambda_grid,
            a1_grid,
            theta_pairs,
            noisy_qubits,
            output_path: args.out,
            figure,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<SweepConfig, CliError> {
        let args = Args::try_parse_from(std::iter::once("djrsp").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        SweepConfig::from_args(args)
    }

    #[test]
    fn point_mode() {
        let c = parse(&[
            "--noise",
            "PhaseFlip",
            "--lambda",
            "0.5",
            "--a1",
            "0.3",
            "--theta0",
            "1",
        ])
        .unwrap();
        assert_eq!(c.noise_kinds, vec![Some(NoiseKind::PhaseFlip)]);
        assert_eq!(c.lambda_grid, vec![0.5]);
        assert_eq!(c.theta_pairs, vec![(1.0, 0.0)]);
        assert_eq!(c.noisy_qubits, vec![Qubit::B, Qubit::C]);

        let c = parse(&["--noise", "none", "--a1", "0.3"]).unwrap();
        assert_eq!(c.noise_kinds, vec![None]);
        assert!(parse(&["--noise", "bitflip", "--a1", "0.3"]).is_err());
        assert!(parse(&["--noise", "bitflip", "--lambda", "0.1"]).is_err());
        assert!(parse(&[
            "--noise",
            "bitflip,phaseflip",
            "--lambda",
            "0.1",
            "--a1",
            "0"
        ])
        .is_err());
    }

    #[test]
    fn sweep_defaults() {
        let c = parse(&["--mode", "sweep", "--noisy-qubits", "abc"]).unwrap();
        assert_eq!(c.noise_kinds.len(), 4);
        assert_eq!(c.lambda_grid.len(), DEFAULT_GRID_POINTS);
        assert_eq!(c.a1_grid.len(), DEFAULT_GRID_POINTS);
        assert_eq!(c.noisy_qubits, Qubit::ALL.to_vec());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(parse(&["--mode", "sweep", "--lambda-list", ""]).is_err());
        assert!(parse(&["--mode", "sweep", "--lambda-list", "0.2,1.5"]).is_err());
        assert!(parse(&["--mode", "sweep", "--a1-list", "-0.1"]).is_err());
        assert!(parse(&["--mode", "sweep", "--theta0", "7"]).is_err());
        assert!(parse(&["--mode", "sweep", "--noise", "dephasing"]).is_err());
        assert!(parse(&["--mode", "sweep", "--noisy-qubits", "BX"]).is_err());
        assert!(parse(&["--mode", "verify", "--noisy-qubits", "ABC"]).is_err());
        assert!(parse(&["--mode", "figure"]).is_err());
        assert!(parse(&["--mode", "figure", "--name", "fig9z"]).is_err());
        assert!(parse(&["--mode", "figure", "--name", "fig4b", "--noise", "bitflip"]).is_err());
    }

    #[test]
    fn figure_defaults() {
        let c = parse(&["--mode", "figure", "--name", "fig4b"]).unwrap();
        assert_eq!(c.noise_kinds, vec![Some(NoiseKind::Depolarizing)]);
        assert_eq!(c.lambda_grid, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let c = parse(&["--mode", "figure", "--name", "fig2c"]).unwrap();
        assert_eq!(c.lambda_grid.len(), DEFAULT_GRID_POINTS);
        assert_eq!(c.theta_pairs, vec![(std::f64::consts::FRAC_PI_2, 0.0)]);
    }
}
