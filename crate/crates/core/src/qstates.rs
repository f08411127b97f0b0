//! States and operators of the GHZ-based joint preparation scheme.
//!
//! The target is `|φ⟩ = a0·e^{iθ0}|0⟩ + a1·e^{iθ1}|1⟩`. Alice knows the
//! amplitudes and measures qubit A in the basis `|P0⟩ = a0|0⟩ + a1|1⟩`,
//! `|P1⟩ = a1|0⟩ − a0|1⟩`. Bob knows the phases and measures qubit B in the
//! basis given by the rows of `V⁽ᵐ⁾`. Charlie applies `R_n⁽ᵐ⁾` to qubit C.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix, C64, TOLERANCE};

/// A classical measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const ALL: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn index(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// The split classical description of the state to prepare.
///
/// Amplitudes are real and nonnegative with `a0² + a1² = 1`; phases lie in
/// `[0, 2π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetStateSpec {
    a0: f64,
    a1: f64,
    theta0: f64,
    theta1: f64,
}

impl TargetStateSpec {
    pub fn new(a0: f64, a1: f64, theta0: f64, theta1: f64) -> Result<Self> {
        let amplitudes_ok = a0.is_finite()
            && a1.is_finite()
            && a0 >= 0.0
            && a1 >= 0.0
            && (a0 * a0 + a1 * a1 - 1.0).abs() <= TOLERANCE;
        if !amplitudes_ok {
            return Err(Error::InvalidAmplitudes { a0, a1 });
        }
        for theta in [theta0, theta1] {
            if !(0.0..=TAU).contains(&theta) {
                return Err(Error::InvalidPhase(theta));
            }
        }
        Ok(Self {
            a0,
            a1,
            theta0,
            theta1,
        })
    }

    /// Builds a spec from `a1` alone, with `a0 = √(1 − a1²)`.
    pub fn from_a1(a1: f64, theta0: f64, theta1: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a1) {
            return Err(Error::InvalidAmplitudes { a0: f64::NAN, a1 });
        }
        Self::new((1.0 - a1 * a1).sqrt(), a1, theta0, theta1)
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    /// Amplitudes of `|φ⟩` in the computational basis.
    pub fn ket(&self) -> [C64; 2] {
        [
            C64::from_polar(self.a0, self.theta0),
            C64::from_polar(self.a1, self.theta1),
        ]
    }
}

pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag(&[1.0, -1.0])
}

/// `|φ⟩⟨φ|`.
pub fn target_density(spec: &TargetStateSpec) -> ComplexMatrix {
    ComplexMatrix::projector(&spec.ket())
}

/// `|GHZ₃⟩ = (|000⟩ + |111⟩)/√2` as a ket, qubits ordered A, B, C.
pub fn ghz3_ket() -> [C64; 8] {
    let mut v = [C64::default(); 8];
    v[0] = c(FRAC_1_SQRT_2, 0.0);
    v[7] = c(FRAC_1_SQRT_2, 0.0);
    v
}

/// `|GHZ₃⟩⟨GHZ₃|`.
pub fn ghz3_density() -> ComplexMatrix {
    ComplexMatrix::projector(&ghz3_ket())
}

/// Alice's basis vectors `|P0⟩`, `|P1⟩`.
pub fn alice_vectors(spec: &TargetStateSpec) -> [[C64; 2]; 2] {
    let (a0, a1) = (spec.a0, spec.a1);
    [[c(a0, 0.), c(a1, 0.)], [c(a1, 0.), c(-a0, 0.)]]
}

/// Alice's projectors `MA_m = |P_m⟩⟨P_m|`.
pub fn alice_basis(spec: &TargetStateSpec) -> [ComplexMatrix; 2] {
    alice_vectors(spec).map(|p| ComplexMatrix::projector(&p))
}

/// Bob's measurement for a given outcome of Alice.
#[derive(Clone, Debug)]
pub struct BobBasis {
    /// `MB_n⁽ᵐ⁾ = |O_n⁽ᵐ⁾⟩⟨O_n⁽ᵐ⁾|`, indexed by `n`.
    pub projectors: [ComplexMatrix; 2],
    /// `V⁽ᵐ⁾`; row `n` holds the amplitudes of `|O_n⁽ᵐ⁾⟩`.
    pub unitary: ComplexMatrix,
}

/// Bob's phase-dependent basis, conditioned on Alice's broadcast outcome `m`.
pub fn bob_basis(spec: &TargetStateSpec, m: Bit) -> BobBasis {
    let e0 = C64::from_polar(FRAC_1_SQRT_2, -spec.theta0);
    let e1 = C64::from_polar(FRAC_1_SQRT_2, -spec.theta1);
    let entries = match m {
        Bit::Zero => vec![e0, e1, e0, -e1],
        Bit::One => vec![e1, e0, -e1, e0],
    };
    let unitary = ComplexMatrix::new(2, 2, entries).unwrap();
    let row = |n: usize| [unitary.get(n, 0), unitary.get(n, 1)];
    let projectors = [
        ComplexMatrix::projector(&row(0)),
        ComplexMatrix::projector(&row(1)),
    ];
    BobBasis {
        projectors,
        unitary,
    }
}

/// Charlie's correction `R_n⁽ᵐ⁾`, global signs included:
/// `R₀⁽⁰⁾ = I`, `R₁⁽⁰⁾ = σ_z`, `R₀⁽¹⁾ = −σ_zσ_x`, `R₁⁽¹⁾ = −σ_x`.
pub fn recovery_operator(m: Bit, n: Bit) -> ComplexMatrix {
    match (m, n) {
        (Bit::Zero, Bit::Zero) => identity2(),
        (Bit::Zero, Bit::One) => pauli_z(),
        (Bit::One, Bit::Zero) => pauli_z().matmul(&pauli_x()).unwrap().scale_real(-1.0),
        (Bit::One, Bit::One) => pauli_x().scale_real(-1.0),
    }
}

/// Every measurement and correction operator of one protocol instance.
#[derive(Clone, Debug)]
pub struct ProtocolOperators {
    pub alice_projectors: [ComplexMatrix; 2],
    /// Indexed `[m][n]`.
    pub bob_projectors: [[ComplexMatrix; 2]; 2],
    pub bob_unitaries: [ComplexMatrix; 2],
    /// Indexed `[m][n]`.
    pub recovery: [[ComplexMatrix; 2]; 2],
}

impl ProtocolOperators {
    pub fn new(spec: &TargetStateSpec) -> Self {
        let [b0, b1] = Bit::ALL.map(|m| bob_basis(spec, m));
        Self {
            alice_projectors: alice_basis(spec),
            bob_projectors: [b0.projectors, b1.projectors],
            bob_unitaries: [b0.unitary, b1.unitary],
            recovery: Bit::ALL.map(|m| Bit::ALL.map(|n| recovery_operator(m, n))),
        }
    }
}
