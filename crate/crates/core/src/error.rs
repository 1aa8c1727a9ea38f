use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// An angle whose denominator is not a power of two.
    #[error("non-dyadic angle {num}/{den} * pi")]
    NonDyadic { num: i64, den: i64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("{qubits} qubits exceeds the configured limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },

    #[error("invalid stabilizer tableau: {0}")]
    InvalidTableau(String),

    #[error("gate `{0}` is not a Clifford gate")]
    NonClifford(String),

    #[error("gate `{0}` is not a monomial gate")]
    NonMonomial(String),

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group enumeration stopped at the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("circuit is not a multi-controlled-X network: gate {index} is `{name}`")]
    NotPermutationCircuit { index: usize, name: String },
}
