//! Single-qubit Kraus channels and their placement on qubits A, B and C.
//!
//! | kind              | Kraus operators                                        |
//! |-------------------|--------------------------------------------------------|
//! | bit flip          | `√(1−λ)·I`, `√λ·σ_x`                                   |
//! | phase flip        | `√(1−λ)·I`, `√λ·σ_z`                                   |
//! | depolarizing      | `√(1−λ)·I`, `√(λ/3)·σ_x`, `√(λ/3)·σ_z`, `√(λ/3)·σ_y`   |
//! | amplitude damping | `diag(1, √(1−λ))`, `[[0, √λ], [0, 0]]`                 |
//!
//! Phase flip is also what is usually meant by phase damping here; only the
//! flip parametrization is provided.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, ComplexMatrix};
use crate::qstates::{identity2, pauli_x, pauli_y, pauli_z};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NoiseKind {
    BitFlip,
    PhaseFlip,
    Depolarizing,
    AmplitudeDamping,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 4] = [
        NoiseKind::BitFlip,
        NoiseKind::PhaseFlip,
        NoiseKind::Depolarizing,
        NoiseKind::AmplitudeDamping,
    ];

    /// Name used on the command line and in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            NoiseKind::BitFlip => "bitflip",
            NoiseKind::PhaseFlip => "phaseflip",
            NoiseKind::Depolarizing => "depolarizing",
            NoiseKind::AmplitudeDamping => "amplitude",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        NoiseKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::UnknownNoiseKind(s.to_string()))
    }
}

/// A noise channel materialized as its Kraus operators.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kind: NoiseKind,
    lambda: f64,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kind: NoiseKind, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::LambdaOutOfRange(lambda));
        }
        let keep = (1.0 - lambda).sqrt();
        let ops = match kind {
            NoiseKind::BitFlip => vec![
                identity2().scale_real(keep),
                pauli_x().scale_real(lambda.sqrt()),
            ],
            NoiseKind::PhaseFlip => vec![
                identity2().scale_real(keep),
                pauli_z().scale_real(lambda.sqrt()),
            ],
            NoiseKind::Depolarizing => {
                let w = (lambda / 3.0).sqrt();
                vec![
                    identity2().scale_real(keep),
                    pauli_x().scale_real(w),
                    pauli_z().scale_real(w),
                    pauli_y().scale_real(w),
                ]
            }
            NoiseKind::AmplitudeDamping => vec![
                ComplexMatrix::diag(&[1.0, keep]),
                ComplexMatrix::new(
                    2,
                    2,
                    vec![c(0., 0.), c(lambda.sqrt(), 0.), c(0., 0.), c(0., 0.)],
                )?,
            ],
        };
        Ok(Self { kind, lambda, ops })
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `Σ_k E_k† E_k`, which is the identity for a trace-preserving channel.
    pub fn completeness(&self) -> ComplexMatrix {
        self.ops
            .iter()
            .map(|e| e.adjoint().matmul(e).unwrap())
            .fold(ComplexMatrix::zeros(2, 2), |acc, m| &acc + &m)
    }

    /// Applies the channel to one qubit of an `n_qubits` register.
    pub fn apply_to_qubit(
        &self,
        rho: &ComplexMatrix,
        qubit: usize,
        n_qubits: usize,
    ) -> Result<ComplexMatrix> {
        let dim = 1usize << n_qubits;
        if rho.shape() != (dim, dim) || qubit >= n_qubits {
            return Err(Error::ShapeMismatch {
                op: "apply_to_qubit",
                left: rho.shape(),
                right: (dim, dim),
            });
        }
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for e in &self.ops {
            acc = acc.try_add(&rho.conjugate_local(e, qubit, n_qubits)?)?;
        }
        Ok(acc)
    }

    /// Applies the channel to a single-qubit density matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.apply_to_qubit(rho, 0, 1)
    }
}

/// One of the three protocol qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Position in the `A ⊗ B ⊗ C` ordering.
    pub fn index(self) -> usize {
        match self {
            Qubit::A => 0,
            Qubit::B => 1,
            Qubit::C => 2,
        }
    }

    /// Parses a label string such as `"BC"` or `"abc"`.
    pub fn parse_set(s: &str) -> Result<Vec<Qubit>> {
        let mut out = Vec::new();
        for ch in s.trim().chars() {
            let q = match ch.to_ascii_uppercase() {
                'A' => Qubit::A,
                'B' => Qubit::B,
                'C' => Qubit::C,
                _ => return Err(Error::UnknownQubit(ch)),
            };
            if !out.contains(&q) {
                out.push(q);
            }
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["A", "B", "C"][self.index()])
    }
}

/// Which channel, if any, acts on each of A, B and C while the source
/// distributes the GHZ state.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NoiseScenario {
    assignments: [Option<KrausChannel>; 3],
}

impl NoiseScenario {
    pub fn noiseless() -> Self {
        Self::default()
    }

    /// The same channel on B and C, A untouched.
    pub fn on_bc(kind: NoiseKind, lambda: f64) -> Result<Self> {
        Self::uniform(kind, lambda, &[Qubit::B, Qubit::C])
    }

    /// The same channel on every listed qubit.
    pub fn uniform(kind: NoiseKind, lambda: f64, qubits: &[Qubit]) -> Result<Self> {
        let channel = KrausChannel::new(kind, lambda)?;
        Ok(qubits
            .iter()
            .fold(Self::default(), |s, &q| s.with(q, channel.clone())))
    }

    pub fn with(mut self, qubit: Qubit, channel: KrausChannel) -> Self {
        self.assignments[qubit.index()] = Some(channel);
        self
    }

    pub fn channel(&self, qubit: Qubit) -> Option<&KrausChannel> {
        self.assignments[qubit.index()].as_ref()
    }

    pub fn noisy_qubits(&self) -> Vec<Qubit> {
        Qubit::ALL
            .into_iter()
            .filter(|&q| self.channel(q).is_some())
            .collect()
    }

    pub fn is_noiseless(&self) -> bool {
        self.assignments.iter().all(Option::is_none)
    }

    /// `Some((kind, λ))` when B and C carry the same channel and A none.
    pub fn as_on_bc(&self) -> Option<(NoiseKind, f64)> {
        match &self.assignments {
            [None, Some(b), Some(c)] if b.kind == c.kind && b.lambda == c.lambda => {
                Some((b.kind, b.lambda))
            }
            _ => None,
        }
    }
}

/// Applies the product channel of `scenario` to a three-qubit state:
/// `Σ_{j1,j2,j3} (E_j1 ⊗ E_j2 ⊗ E_j3) ρ (E_j1 ⊗ E_j2 ⊗ E_j3)†`, with the
/// identity standing in on noiseless qubits.
pub fn apply_noise(rho: &ComplexMatrix, scenario: &NoiseScenario) -> Result<ComplexMatrix> {
    if rho.shape() != (8, 8) {
        return Err(Error::ShapeMismatch {
            op: "apply_noise",
            left: rho.shape(),
            right: (8, 8),
        });
    }
    if scenario.is_noiseless() {
        return Ok(rho.clone());
    }
    // Channels on distinct qubits commute, so they can be applied one at a time.
    let mut out = rho.clone();
    for (q, ch) in scenario.assignments.iter().enumerate() {
        if let Some(ch) = ch {
            out = ch.apply_to_qubit(&out, q, 3)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::TOLERANCE;
    use crate::qstates::ghz3_density;
    use proptest::prelude::*;

    #[test]
    fn parse_kind_names() {
        assert_eq!("BitFlip".parse::<NoiseKind>().unwrap(), NoiseKind::BitFlip);
        assert_eq!(
            "PHASEFLIP".parse::<NoiseKind>().unwrap(),
            NoiseKind::PhaseFlip
        );
        assert_eq!(
            "depolarizing".parse::<NoiseKind>().unwrap(),
            NoiseKind::Depolarizing
        );
        assert_eq!(
            "Amplitude".parse::<NoiseKind>().unwrap(),
            NoiseKind::AmplitudeDamping
        );
        assert!(matches!(
            "dephasing".parse::<NoiseKind>(),
            Err(Error::UnknownNoiseKind(_))
        ));
        for k in NoiseKind::ALL {
            assert_eq!(k.to_string().parse::<NoiseKind>().unwrap(), k);
        }
    }

    #[test]
    fn lambda_range() {
        assert_eq!(
            KrausChannel::new(NoiseKind::BitFlip, 1.5),
            Err(Error::LambdaOutOfRange(1.5))
        );
        assert!(KrausChannel::new(NoiseKind::BitFlip, -0.01).is_err());
        assert!(KrausChannel::new(NoiseKind::BitFlip, f64::NAN).is_err());
    }

    #[test]
    fn operator_counts_and_values() {
        let bf = KrausChannel::new(NoiseKind::BitFlip, 0.0).unwrap();
        assert_eq!(bf.kraus_ops().len(), 2);
        assert_eq!(bf.kraus_ops()[0], identity2());
        assert_eq!(bf.kraus_ops()[1], ComplexMatrix::zeros(2, 2));

        let ad = KrausChannel::new(NoiseKind::AmplitudeDamping, 0.36).unwrap();
        assert!(ad.kraus_ops()[0].approx_eq(&ComplexMatrix::diag(&[1.0, 0.8]), TOLERANCE));
        let e1 = ComplexMatrix::from_real(2, 2, &[0.0, 0.6, 0.0, 0.0]).unwrap();
        assert!(ad.kraus_ops()[1].approx_eq(&e1, TOLERANCE));

        let de = KrausChannel::new(NoiseKind::Depolarizing, 0.3).unwrap();
        let ops = de.kraus_ops();
        assert_eq!(ops.len(), 4);
        assert!(ops[0].approx_eq(&identity2().scale_real(0.7f64.sqrt()), TOLERANCE));
        assert!(ops[1].approx_eq(&pauli_x().scale_real(0.1f64.sqrt()), TOLERANCE));
        assert!(ops[2].approx_eq(&pauli_z().scale_real(0.1f64.sqrt()), TOLERANCE));
        assert!(ops[3].approx_eq(&pauli_y().scale_real(0.1f64.sqrt()), TOLERANCE));
    }

    #[test]
    fn completeness_for_all_kinds() {
        for kind in NoiseKind::ALL {
            for i in 0..=20 {
                let ch = KrausChannel::new(kind, i as f64 / 20.0).unwrap();
                assert!(
                    ch.completeness().approx_eq(&identity2(), TOLERANCE),
                    "{kind} {i}"
                );
            }
        }
    }

    #[test]
    fn noiseless_scenario_is_identity() {
        let rho = ghz3_density();
        assert_eq!(apply_noise(&rho, &NoiseScenario::noiseless()).unwrap(), rho);
        for kind in NoiseKind::ALL {
            let s = NoiseScenario::uniform(kind, 0.0, &Qubit::ALL).unwrap();
            assert!(apply_noise(&rho, &s).unwrap().approx_eq(&rho, TOLERANCE));
        }
    }

    #[test]
    fn depolarizing_full_strength_on_ground_state() {
        // Oracle: (σ_x|0⟩⟨0|σ_x + σ_z|0⟩⟨0|σ_z + σ_y|0⟩⟨0|σ_y)/3 = (|1⟩⟨1| + |0⟩⟨0| + |1⟩⟨1|)/3.
        let ch = KrausChannel::new(NoiseKind::Depolarizing, 1.0).unwrap();
        let out = ch.apply(&ComplexMatrix::diag(&[1.0, 0.0])).unwrap();
        assert!(out.approx_eq(&ComplexMatrix::diag(&[1.0 / 3.0, 2.0 / 3.0]), TOLERANCE));
    }

    #[test]
    fn full_bit_flip_on_b_and_c() {
        let s = NoiseScenario::on_bc(NoiseKind::BitFlip, 1.0).unwrap();
        let out = apply_noise(&ghz3_density(), &s).unwrap();
        // (|011⟩ + |100⟩)/√2
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0., 0.); 8];
        v[3] = c(h, 0.);
        v[4] = c(h, 0.);
        assert!(out.approx_eq(&ComplexMatrix::projector(&v), TOLERANCE));
    }

    #[test]
    fn apply_noise_rejects_wrong_dimension() {
        let s = NoiseScenario::on_bc(NoiseKind::BitFlip, 0.5).unwrap();
        assert!(matches!(
            apply_noise(&ComplexMatrix::identity(4), &s),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn scenario_helpers() {
        let s = NoiseScenario::on_bc(NoiseKind::PhaseFlip, 0.2).unwrap();
        assert_eq!(s.noisy_qubits(), vec![Qubit::B, Qubit::C]);
        assert_eq!(s.as_on_bc(), Some((NoiseKind::PhaseFlip, 0.2)));
        let all = NoiseScenario::uniform(NoiseKind::PhaseFlip, 0.2, &Qubit::ALL).unwrap();
        assert_eq!(all.as_on_bc(), None);
        let mixed = NoiseScenario::noiseless()
            .with(
                Qubit::B,
                KrausChannel::new(NoiseKind::BitFlip, 0.2).unwrap(),
            )
            .with(
                Qubit::C,
                KrausChannel::new(NoiseKind::PhaseFlip, 0.2).unwrap(),
            );
        assert_eq!(mixed.as_on_bc(), None);
        assert_eq!(Qubit::parse_set("cb").unwrap(), vec![Qubit::B, Qubit::C]);
        assert_eq!(Qubit::parse_set("ABC").unwrap(), Qubit::ALL.to_vec());
        assert_eq!(Qubit::parse_set("BD"), Err(Error::UnknownQubit('D')));
    }

    /// Σ (E_a ⊗ E_b ⊗ E_c) ρ (E_a ⊗ E_b ⊗ E_c)† over every Kraus tuple.
    fn joint_kraus_sum(rho: &ComplexMatrix, scenario: &NoiseScenario) -> ComplexMatrix {
        let id = [identity2()];
        let ops: Vec<&[ComplexMatrix]> = scenario
            .assignments
            .iter()
            .map(|a| a.as_ref().map_or(&id[..], |ch| ch.kraus_ops()))
            .collect();
        let mut acc = ComplexMatrix::zeros(8, 8);
        for ea in ops[0] {
            for eb in ops[1] {
                for ec in ops[2] {
                    let e = ComplexMatrix::kron_all([ea, eb, ec]);
                    acc = &acc + &e.matmul(rho).unwrap().matmul(&e.adjoint()).unwrap();
                }
            }
        }
        acc
    }

    fn kind() -> impl Strategy<Value = NoiseKind> {
        prop::sample::select(NoiseKind::ALL.to_vec())
    }

    /// Random mixed 3-qubit state: a convex mix of two random pure states.
    fn state() -> impl Strategy<Value = ComplexMatrix> {
        (
            prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
            0.0f64..1.0,
        )
            .prop_map(|(v, w)| {
                let ket = |s: &[(f64, f64)]| {
                    let raw: Vec<_> = s.iter().map(|&(re, im)| c(re, im)).collect();
                    let norm = raw
                        .iter()
                        .map(|z| z.norm_sqr())
                        .sum::<f64>()
                        .sqrt()
                        .max(1e-9);
                    raw.into_iter().map(|z| z / norm).collect::<Vec<_>>()
                };
                let p = ComplexMatrix::projector(&ket(&v[..8])).scale_real(w);
                let q = ComplexMatrix::projector(&ket(&v[8..])).scale_real(1.0 - w);
                &p + &q
            })
    }

    proptest! {
        #[test]
        fn output_is_a_density_matrix(
            rho in state(),
            kinds in prop::collection::vec(prop::option::of(kind()), 3),
            lambdas in prop::collection::vec(0.0f64..=1.0, 3),
        ) {
            let mut s = NoiseScenario::noiseless();
            for (q, (k, l)) in Qubit::ALL.into_iter().zip(kinds.into_iter().zip(lambdas)) {
                if let Some(k) = k {
                    s = s.with(q, KrausChannel::new(k, l).unwrap());
                }
            }
            let out = apply_noise(&rho, &s).unwrap();
            prop_assert!((out.trace().unwrap().re - 1.0).abs() < TOLERANCE);
            prop_assert!(out.validate_density(TOLERANCE).is_ok());
        }

        #[test]
        fn lifts_on_disjoint_qubits_commute(rho in state(), kb in kind(), kc in kind(), lb in 0.0f64..=1.0, lc in 0.0f64..=1.0) {
            let cb = KrausChannel::new(kb, lb).unwrap();
            let cc = KrausChannel::new(kc, lc).unwrap();
            let joint = apply_noise(&rho, &NoiseScenario::noiseless().with(Qubit::B, cb.clone()).with(Qubit::C, cc.clone())).unwrap();
            let b_then_c = cc.apply_to_qubit(&cb.apply_to_qubit(&rho, 1, 3).unwrap(), 2, 3).unwrap();
            let c_then_b = cb.apply_to_qubit(&cc.apply_to_qubit(&rho, 2, 3).unwrap(), 1, 3).unwrap();
            prop_assert!(joint.approx_eq(&b_then_c, TOLERANCE));
            prop_assert!(joint.approx_eq(&c_then_b, TOLERANCE));
        }

        #[test]
        fn matches_joint_kraus_sum(rho in state(), ks in prop::collection::vec(kind(), 3), ls in prop::collection::vec(0.0f64..=1.0, 3), mask in 0u8..8) {
            let mut scenario = NoiseScenario::noiseless();
            for q in Qubit::ALL {
                if mask & (1 << q.index()) != 0 {
                    scenario = scenario.with(q, KrausChannel::new(ks[q.index()], ls[q.index()]).unwrap());
                }
            }
            let got = apply_noise(&rho, &scenario).unwrap();
            prop_assert!(got.approx_eq(&joint_kraus_sum(&rho, &scenario), TOLERANCE));
        }
    }
}
