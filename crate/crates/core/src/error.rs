//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("operator size mismatch: {0} qubits vs {1} qubits")]
    SizeMismatch(usize, usize),

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("product carries an imaginary phase (operands anticommute); not a stabilizer-calculus operation")]
    ImaginaryPhase,

    #[error("forced outcome supplied for a deterministic measurement")]
    ForcedOutcomeDeterministic,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("{0} qubits exceed the statevector cap of {max}", max = crate::statevector::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("projection onto a zero-norm subspace")]
    ZeroNormProjection,

    #[error("state is not normalized")]
    NotNormalized,

    #[error("invalid code distance {0}: need d >= 2")]
    BadDistance(usize),

    #[error("invalid lattice dimensions {0}x{1}")]
    BadLatticeSize(usize, usize),

    #[error("detection event inconsistent with lattice: {0}")]
    BadEvent(String),

    #[error("syndrome records are not consecutive cycles: {0} then {1}")]
    NonConsecutiveRecords(u64, u64),

    #[error("matching graph has an odd node count ({0}); graph construction bug")]
    OddNodeCount(usize),

    #[error("invalid defect operation: {0}")]
    BadDefectOp(String),

    #[error("invalid probability {0}")]
    BadProbability(f64),

    #[error("invalid configuration: {0}")]
    BadConfig(String),

    #[error("curves do not cross in the sampled range")]
    NoCrossing,

    #[error("malformed trace: {0}")]
    BadTrace(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for SimError {
    fn from(e: std::io::Error) -> Self {
        SimError::Io(e.to_string())
    }
}
