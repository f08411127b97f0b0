use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entry buffer has length {len}, expected {rows}x{cols}")]
    InvalidLength {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("incompatible shapes for {op}: {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("subsystem dimensions {dims:?} do not match a {size}x{size} matrix")]
    SubsystemMismatch { dims: Vec<usize>, size: usize },

    #[error("no subsystem selected to keep")]
    EmptyKeep,

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("amplitudes must be nonnegative with a0^2 + a1^2 = 1 (got a0={a0}, a1={a1})")]
    InvalidAmplitudes { a0: f64, a1: f64 },

    #[error("phase {0} outside [0, 2pi]")]
    InvalidPhase(f64),

    #[error("noise parameter {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("unknown noise kind `{0}` (expected bitflip, phaseflip, depolarizing or amplitude)")]
    UnknownNoiseKind(String),

    #[error("unknown qubit label `{0}` (expected A, B or C)")]
    UnknownQubit(char),

    #[error("amplitude-damping closed forms need Alice's outcome m")]
    MissingOutcome,

    #[error("outcome m is only meaningful for amplitude damping")]
    UnexpectedOutcome,

    #[error("not a valid density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("scenario has no closed form: {0}")]
    NoClosedForm(String),
}

pub type Result<T> = std::result::Result<T, Error>;
