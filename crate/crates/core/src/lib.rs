//! Density-matrix simulation of deterministic joint remote state preparation
//! over a shared GHZ state, with Kraus noise on the distributed qubits.
//!
//! Two preparers jointly prepare `|φ⟩ = a0·e^{iθ0}|0⟩ + a1·e^{iθ1}|1⟩` at a
//! remote receiver. Alice holds the amplitudes, Bob the phases, and Charlie
//! ends up with the state after a Pauli correction. When the GHZ qubits pass
//! through bit-flip, phase-flip, depolarizing or amplitude-damping channels
//! the output degrades; this crate computes the output exactly and checks it
//! against the known closed forms.
//!
//! ```
//! use djrsp::{analysis, NoiseKind, NoiseScenario, TargetStateSpec};
//!
//! let spec = TargetStateSpec::from_a1(0.6, 0.0, 0.0)?;
//! let scenario = NoiseScenario::on_bc(NoiseKind::BitFlip, 0.5)?;
//! for r in analysis::compare(&spec, &scenario)? {
//!     assert!((r.f_sim - 0.9608).abs() < 1e-12);
//!     assert!(r.abs_err < 1e-12);
//! }
//! # Ok::<(), djrsp::Error>(())
//! ```
//!
//! Qubits are always ordered `A ⊗ B ⊗ C` with A most significant.

pub mod analysis;
pub mod channels;
mod error;
pub mod linalg;
pub mod protocol;
pub mod qstates;

pub use channels::{apply_noise, KrausChannel, NoiseKind, NoiseScenario, Qubit};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, C64};
pub use protocol::{run_protocol, BranchResult, ProtocolRun};
pub use qstates::{Bit, TargetStateSpec};

// The guide under book/ and the README are compiled as doc tests so their
// snippets stay honest.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    mod linear_algebra {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/noise.md")]
    mod noise {}
    #[doc = include_str!("../../../book/src/protocol.md")]
    mod protocol {}
    #[doc = include_str!("../../../book/src/fidelity.md")]
    mod fidelity {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
