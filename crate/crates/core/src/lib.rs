//! Exact Clifford-hierarchy analysis for monomial, diagonal and permutation
//! gates on a handful of qubits.

pub mod circuit;
pub mod clifford;
pub mod diagonal;
pub mod error;
pub mod groups;
pub mod hierarchy;
pub mod matrix;
pub mod monomial;
pub mod pauli;
pub mod phase;
pub mod scalar;
pub mod stabilizer;

pub use circuit::{Circuit, Gate, GateKind};
pub use clifford::CliffordTableau;
pub use diagonal::DiagonalGate;
pub use error::{Error, Result};
pub use groups::{GroupClosure, GroupElementForm};
pub use hierarchy::{Engine, EngineConfig, LevelVerdict, Status};
pub use matrix::ExactMatrix;
pub use monomial::MonomialGate;
pub use pauli::PauliString;
pub use phase::DyadicPhase;
pub use scalar::ExactScalar;
pub use stabilizer::StabilizerTableau;
