//! Continuous-measurement error correction for the 9-qubit Bacon-Shor
//! subsystem code: Pauli algebra, trajectory simulation, filtering,
//! decoding and analytic rate predictions.

pub mod analytics;
pub mod code_algebra;
pub mod correlators;
pub mod decoder;
pub mod harness;
pub mod pauli;
pub mod trajectory_engine;

pub use code_algebra::{Logical, SubspaceIndex};
pub use pauli::{PauliKind, PauliOperator};
