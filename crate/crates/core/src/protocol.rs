//! The three-step protocol in density-operator form.
//!
//! 1. Alice measures A with `MA_m`; B and C are left in
//!    `ρ_Qm = tr_A[MA_m ρ MA_m† / p(m)]`.
//! 2. Bob measures B with `MB_n⁽ᵐ⁾`; C is left in
//!    `ρ_On = tr_B[MB_n ρ_Qm MB_n† / p(n|m)]`.
//! 3. Charlie applies `R_n⁽ᵐ⁾`.
//!
//! All four `(m, n)` branches are enumerated. A branch's probability is the
//! trace of the source after both projections, `p(m, n) = p(m)·p(n|m)`.

use crate::channels::{apply_noise, NoiseScenario};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::qstates::{ghz3_density, identity2, Bit, ProtocolOperators, TargetStateSpec};

/// Branches with a joint probability below this are reported as unreachable.
pub const UNREACHABLE_THRESHOLD: f64 = 1e-15;

/// One classical-outcome branch of a run.
#[derive(Clone, Debug)]
pub struct BranchResult {
    pub m: Bit,
    pub n: Bit,
    /// Joint probability of observing `(m, n)`.
    pub prob: f64,
    /// Charlie's state after recovery; `None` when the branch is unreachable.
    pub rho_out: Option<ComplexMatrix>,
}

impl BranchResult {
    pub fn is_reachable(&self) -> bool {
        self.rho_out.is_some()
    }
}

/// A full run over all four branches.
#[derive(Clone, Debug)]
pub struct ProtocolRun {
    pub spec: TargetStateSpec,
    pub scenario: NoiseScenario,
    /// Ordered `(0,0), (0,1), (1,0), (1,1)`.
    pub branches: [BranchResult; 4],
}

impl ProtocolRun {
    pub fn branch(&self, m: Bit, n: Bit) -> &BranchResult {
        &self.branches[2 * m.index() + n.index()]
    }

    /// Probability-weighted mixture of the reachable branch outputs.
    pub fn average_output(&self) -> ComplexMatrix {
        average_output(self)
    }
}

/// Distributes the GHZ state through `scenario` and runs the protocol on it.
pub fn run_protocol(spec: &TargetStateSpec, scenario: &NoiseScenario) -> Result<ProtocolRun> {
    let source = apply_noise(&ghz3_density(), scenario)?;
    let branches = run_on_source(spec, &source)?;
    Ok(ProtocolRun {
        spec: *spec,
        scenario: scenario.clone(),
        branches,
    })
}

/// Runs the protocol on an arbitrary 8x8 source state shared as A ⊗ B ⊗ C.
pub fn run_on_source(spec: &TargetStateSpec, source: &ComplexMatrix) -> Result<[BranchResult; 4]> {
    let ops = ProtocolOperators::new(spec);
    let id2 = identity2();

    let mut out = Vec::with_capacity(4);
    for m in Bit::ALL {
        let alice = &ops.alice_projectors[m.index()];
        let after_alice = source.conjugate_local(alice, 0, 3)?;
        let p_m = after_alice.trace()?.re;
        let rho_q = (p_m >= UNREACHABLE_THRESHOLD)
            .then(|| {
                after_alice
                    .scale_real(1.0 / p_m)
                    .partial_trace(&[2, 2, 2], &[1, 2])
            })
            .transpose()?;

        for n in Bit::ALL {
            let bob = &ops.bob_projectors[m.index()][n.index()];
            let (prob, rho_out) = match &rho_q {
                Some(rho_q) => {
                    let after_bob = rho_q.conjugate_local(bob, 0, 2)?;
                    let p_n = after_bob.trace()?.re;
                    let prob = p_m * p_n;
                    if prob >= UNREACHABLE_THRESHOLD {
                        let charlie = after_bob
                            .scale_real(1.0 / p_n)
                            .partial_trace(&[2, 2], &[1])?;
                        (
                            prob,
                            Some(charlie.conjugate_by(&ops.recovery[m.index()][n.index()])?),
                        )
                    } else {
                        (prob, None)
                    }
                }
                None => {
                    let joint = ComplexMatrix::kron_all([alice, bob, &id2]);
                    (source.conjugate_by(&joint)?.trace()?.re, None)
                }
            };
            out.push(BranchResult {
                m,
                n,
                prob,
                rho_out,
            });
        }
    }
    Ok(out.try_into().expect("four branches"))
}

/// `Σ p(m,n)·ρ_out(m,n)` over the reachable branches.
pub fn average_output(run: &ProtocolRun) -> ComplexMatrix {
    run.branches
        .iter()
        .filter_map(|b| b.rho_out.as_ref().map(|r| r.scale_real(b.prob)))
        .fold(ComplexMatrix::zeros(2, 2), |acc, r| &acc + &r)
}
