//! Fidelities, closed-form outputs, and the simulation/closed-form comparator.
//!
//! With `q = a1² − a1⁴` and `Δ = θ0 − θ1`, the closed-form fidelities for
//! noise of one kind on both B and C are
//!
//! | kind                | fidelity                                      |
//! |---------------------|-----------------------------------------------|
//! | bit flip            | `1 − λ + 4λq[λ + (1 − λ)cos 2Δ]`              |
//! | phase flip          | `1 − 8λ(1 − λ)q`                              |
//! | depolarizing        | `1 − 2λ/3 + (8/9)λ(4λ − 3)q`                  |
//! | amplitude, `m = 0`  | `1 − a1²λ`                                    |
//! | amplitude, `m = 1`  | `1 + a1²λ − λ`                                |
//!
//! These are evaluated directly from the formulas and never from the
//! simulator, so the two can be checked against each other.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use crate::channels::{NoiseKind, NoiseScenario};
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::protocol::run_protocol;
use crate::qstates::{Bit, TargetStateSpec};

/// Tolerance used when validating simulated output states.
pub const DENSITY_TOLERANCE: f64 = 1e-10;

/// Largest simulation/closed-form gap accepted by [`GridSummary::passes`].
pub const AGREEMENT_TOLERANCE: f64 = 1e-10;

/// Phase differences `θ0 − θ1` of the standard verification grid.
pub const VERIFY_DTHETAS: [f64; 6] = [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];

/// `n` evenly spaced points covering `[0, 1]`, endpoints included.
pub fn unit_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

/// Spec with the given `a1` and phase difference, placed as `θ0 = Δ`,
/// `θ1 = 0` (or `θ0 = 0`, `θ1 = −Δ` for negative `Δ`).
pub fn spec_for(a1: f64, dtheta: f64) -> Result<TargetStateSpec> {
    if dtheta >= 0.0 {
        TargetStateSpec::from_a1(a1, dtheta, 0.0)
    } else {
        TargetStateSpec::from_a1(a1, 0.0, -dtheta)
    }
}

/// `|⟨φ|ρ|φ⟩|` for a valid single-qubit density matrix.
pub fn fidelity(rho_out: &ComplexMatrix, spec: &TargetStateSpec) -> Result<f64> {
    if rho_out.shape() != (2, 2) {
        return Err(Error::NotDensityMatrix(format!(
            "expected 2x2, got {:?}",
            rho_out.shape()
        )));
    }
    rho_out.validate_density(DENSITY_TOLERANCE)?;
    Ok(rho_out.expectation(&spec.ket())?.norm())
}

fn check_outcome(kind: NoiseKind, lambda: f64, m: Option<Bit>) -> Result<Option<Bit>> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    match (kind, m) {
        (NoiseKind::AmplitudeDamping, None) => Err(Error::MissingOutcome),
        (NoiseKind::AmplitudeDamping, m) => Ok(m),
        (_, Some(_)) => Err(Error::UnexpectedOutcome),
        (_, None) => Ok(None),
    }
}

/// Closed-form fidelity for noise of `kind` on B and C. `m` must be given
/// for amplitude damping and only then.
pub fn closed_form_fidelity(
    kind: NoiseKind,
    lambda: f64,
    spec: &TargetStateSpec,
    m: Option<Bit>,
) -> Result<f64> {
    let m = check_outcome(kind, lambda, m)?;
    let l = lambda;
    let a1sq = spec.a1() * spec.a1();
    let q = a1sq - a1sq * a1sq;
    let dtheta = spec.theta0() - spec.theta1();
    Ok(match (kind, m) {
        (NoiseKind::BitFlip, _) => 1.0 - l + 4.0 * l * q * (l + (1.0 - l) * (2.0 * dtheta).cos()),
        (NoiseKind::PhaseFlip, _) => 1.0 - 8.0 * l * (1.0 - l) * q,
        (NoiseKind::Depolarizing, _) => 1.0 - 2.0 / 3.0 * l + 8.0 / 9.0 * l * (4.0 * l - 3.0) * q,
        (NoiseKind::AmplitudeDamping, Some(Bit::Zero)) => 1.0 - a1sq * l,
        (NoiseKind::AmplitudeDamping, _) => 1.0 + a1sq * l - l,
    })
}

/// Closed-form output state at Charlie for noise of `kind` on B and C.
pub fn closed_form_output(
    kind: NoiseKind,
    lambda: f64,
    spec: &TargetStateSpec,
    m: Option<Bit>,
) -> Result<ComplexMatrix> {
    let m = check_outcome(kind, lambda, m)?;
    let l = lambda;
    let (a0, a1) = (spec.a0(), spec.a1());
    let (a0sq, a1sq) = (a0 * a0, a1 * a1);
    let dtheta = spec.theta0() - spec.theta1();
    // e^{iΔ}, e^{-iΔ}
    let fwd = C64::from_polar(1.0, dtheta);
    let back = fwd.conj();

    let (p00, p11, c01, c10) = match (kind, m) {
        (NoiseKind::BitFlip, _) => {
            let keep = 2.0 * l * l - 2.0 * l + 1.0;
            let swap = 2.0 * l * (l - 1.0);
            (
                a0sq * (1.0 - 2.0 * l) + l,
                a1sq * (1.0 - 2.0 * l) + l,
                (fwd * keep - back * swap) * (a0 * a1),
                (back * keep - fwd * swap) * (a0 * a1),
            )
        }
        (NoiseKind::PhaseFlip, _) => {
            let d = (1.0 - 2.0 * l).powi(2) * a0 * a1;
            (a0sq, a1sq, fwd * d, back * d)
        }
        (NoiseKind::Depolarizing, _) => {
            let d = (3.0 - 4.0 * l).powi(2) * a0 * a1 / 9.0;
            (
                (a0sq * (3.0 - 4.0 * l) + 2.0 * l) / 3.0,
                (a1sq * (3.0 - 4.0 * l) + 2.0 * l) / 3.0,
                fwd * d,
                back * d,
            )
        }
        (NoiseKind::AmplitudeDamping, m) => {
            let d = a0 * a1 * (1.0 - l);
            let (p00, p11) = if m == Some(Bit::Zero) {
                (a0sq * (1.0 - l) + l, a1sq * (1.0 - l))
            } else {
                (a0sq * (1.0 - l), a1sq * (1.0 - l) + l)
            };
            (p00, p11, fwd * d, back * d)
        }
    };
    ComplexMatrix::new(2, 2, vec![C64::new(p00, 0.0), c01, c10, C64::new(p11, 0.0)])
}

/// Simulated and (where available) closed-form figures for one branch.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchEvaluation {
    pub m: Bit,
    pub n: Bit,
    pub prob: f64,
    /// `None` for unreachable branches.
    pub f_sim: Option<f64>,
    /// `None` when the scenario has no closed form.
    pub f_closed: Option<f64>,
}

impl BranchEvaluation {
    pub fn abs_err(&self) -> Option<f64> {
        Some((self.f_sim? - self.f_closed?).abs())
    }
}

/// Closed-form fidelity for a branch of `scenario`, if the scenario has one:
/// noiseless, or one kind with equal λ on B and C.
pub fn scenario_closed_form(
    scenario: &NoiseScenario,
    spec: &TargetStateSpec,
    m: Bit,
) -> Result<Option<f64>> {
    if scenario.is_noiseless() {
        return Ok(Some(1.0));
    }
    match scenario.as_on_bc() {
        Some((kind, lambda)) => {
            let m = (kind == NoiseKind::AmplitudeDamping).then_some(m);
            closed_form_fidelity(kind, lambda, spec, m).map(Some)
        }
        None => Ok(None),
    }
}

/// Runs the protocol and evaluates every branch.
pub fn evaluate(spec: &TargetStateSpec, scenario: &NoiseScenario) -> Result<Vec<BranchEvaluation>> {
    let run = run_protocol(spec, scenario)?;
    run.branches
        .iter()
        .map(|b| {
            let f_sim = b.rho_out.as_ref().map(|r| fidelity(r, spec)).transpose()?;
            Ok(BranchEvaluation {
                m: b.m,
                n: b.n,
                prob: b.prob,
                f_sim,
                f_closed: scenario_closed_form(scenario, spec, b.m)?,
            })
        })
        .collect()
}

/// One branch of the simulation/closed-form comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct FidelityResult {
    /// `None` for the noiseless scenario.
    pub noise_kind: Option<NoiseKind>,
    pub lambda: f64,
    pub spec: TargetStateSpec,
    pub m: Bit,
    pub n: Bit,
    pub prob: f64,
    pub f_sim: f64,
    pub f_closed: f64,
    pub abs_err: f64,
}

/// Compares every reachable branch against its closed form. The scenario
/// must be noiseless or carry one kind with equal λ on B and C only.
pub fn compare(spec: &TargetStateSpec, scenario: &NoiseScenario) -> Result<Vec<FidelityResult>> {
    let (noise_kind, lambda) = if scenario.is_noiseless() {
        (None, 0.0)
    } else {
        let (k, l) = scenario.as_on_bc().ok_or_else(|| {
            Error::NoClosedForm(
                "noise must act on B and C only, with one kind and one lambda".into(),
            )
        })?;
        (Some(k), l)
    };
    Ok(evaluate(spec, scenario)?
        .into_iter()
        .filter_map(|e| {
            let (f_sim, f_closed) = (e.f_sim?, e.f_closed?);
            Some(FidelityResult {
                noise_kind,
                lambda,
                spec: *spec,
                m: e.m,
                n: e.n,
                prob: e.prob,
                f_sim,
                f_closed,
                abs_err: (f_sim - f_closed).abs(),
            })
        })
        .collect())
}

/// Worst-case outcome of a comparator grid.
#[derive(Clone, Debug, Default)]
pub struct GridSummary {
    pub points: usize,
    pub branches: usize,
    pub worst: Option<FidelityResult>,
}

impl GridSummary {
    pub fn max_abs_err(&self) -> f64 {
        self.worst.as_ref().map_or(0.0, |w| w.abs_err)
    }

    pub fn passes(&self) -> bool {
        self.max_abs_err() < AGREEMENT_TOLERANCE
    }

    /// Folds another summary into this one.
    pub fn merge(mut self, other: GridSummary) -> GridSummary {
        self.points += other.points;
        self.branches += other.branches;
        if other.max_abs_err() > self.max_abs_err() || self.worst.is_none() {
            self.worst = other.worst.or(self.worst);
        }
        self
    }

    pub fn record(&mut self, results: Vec<FidelityResult>) {
        self.points += 1;
        self.branches += results.len();
        for r in results {
            if self.worst.as_ref().is_none_or(|w| r.abs_err > w.abs_err) {
                self.worst = Some(r);
            }
        }
    }
}

/// Compares one `(kind, λ, a1, Δ)` grid point.
pub fn compare_point(
    kind: NoiseKind,
    lambda: f64,
    a1: f64,
    dtheta: f64,
) -> Result<Vec<FidelityResult>> {
    compare(&spec_for(a1, dtheta)?, &NoiseScenario::on_bc(kind, lambda)?)
}

/// Sequential comparator over a full grid.
pub fn compare_grid(
    kinds: &[NoiseKind],
    lambdas: &[f64],
    a1s: &[f64],
    dthetas: &[f64],
) -> Result<GridSummary> {
    let mut summary = GridSummary::default();
    for &kind in kinds {
        for &lambda in lambdas {
            for &a1 in a1s {
                for &dtheta in dthetas {
                    summary.record(compare_point(kind, lambda, a1, dtheta)?);
                }
            }
        }
    }
    Ok(summary)
}
