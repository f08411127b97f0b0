//! The figure grids: fidelity surfaces over (λ, a1) and curves over a1 for a
//! few selected λ.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::str::FromStr;

use djrsp::analysis::unit_grid;
use djrsp::{Bit, NoiseKind};

use crate::config::DEFAULT_GRID_POINTS;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layout {
    /// Full λ × a1 grid.
    Surface,
    /// a1 sweep for a handful of λ values.
    Curves,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Figure {
    pub id: &'static str,
    pub kind: NoiseKind,
    /// θ0 − θ1.
    pub dtheta: f64,
    pub layout: Layout,
    /// Alice's outcome to keep, for amplitude damping.
    pub m: Option<Bit>,
}

/// λ values drawn as separate curves unless overridden.
pub const CURVE_LAMBDAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

pub const FIGURES: [Figure; 14] = {
    use Layout::*;
    use NoiseKind::*;
    const fn fig(
        id: &'static str,
        kind: NoiseKind,
        dtheta: f64,
        layout: Layout,
        m: Option<Bit>,
    ) -> Figure {
        Figure {
            id,
            kind,
            dtheta,
            layout,
            m,
        }
    }
    [
        fig("fig2a", BitFlip, 0.0, Surface, None),
        fig("fig2b", BitFlip, FRAC_PI_4, Surface, None),
        fig("fig2c", BitFlip, FRAC_PI_2, Surface, None),
        fig("fig2d", BitFlip, 0.0, Curves, None),
        fig("fig2e", BitFlip, FRAC_PI_4, Curves, None),
        fig("fig2f", BitFlip, FRAC_PI_2, Curves, None),
        fig("fig3a", PhaseFlip, 0.0, Surface, None),
        fig("fig3b", PhaseFlip, 0.0, Curves, None),
        fig("fig4a", Depolarizing, 0.0, Surface, None),
        fig("fig4b", Depolarizing, 0.0, Curves, None),
        fig("fig5a", AmplitudeDamping, 0.0, Surface, Some(Bit::Zero)),
        fig("fig5b", AmplitudeDamping, 0.0, Surface, Some(Bit::One)),
        fig("fig5c", AmplitudeDamping, 0.0, Curves, Some(Bit::Zero)),
        fig("fig5d", AmplitudeDamping, 0.0, Curves, Some(Bit::One)),
    ]
};

impl Figure {
    pub fn default_lambdas(&self) -> Vec<f64> {
        match self.layout {
            Layout::Surface => unit_grid(DEFAULT_GRID_POINTS),
            Layout::Curves => CURVE_LAMBDAS.to_vec(),
        }
    }
}

impl FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let lower = s.trim().to_ascii_lowercase();
        FIGURES
            .iter()
            .find(|f| f.id == lower)
            .copied()
            .ok_or_else(|| {
                let ids: Vec<_> = FIGURES.iter().map(|f| f.id).collect();
                format!("unknown figure `{s}` (expected one of {})", ids.join(", "))
            })
    }
}
