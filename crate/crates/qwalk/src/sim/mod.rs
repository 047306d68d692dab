//! Dense state-vector simulation: gates, circuits, measurement and the
//! multi-controlled X decomposition.

mod circuit;
mod gate;
mod mcx;
mod state;

pub use circuit::{
    apply_circuit, apply_circuit_mut, circuit_unitary, circuit_unitary_with_limit, Circuit,
    UNITARY_QUBIT_LIMIT,
};
pub use gate::{Control, Gate, GateKind};
pub use mcx::decompose_mcx;
pub use state::{
    apply_gate, measure_register, sample_index, StateVector, NORM_TOL,
};
