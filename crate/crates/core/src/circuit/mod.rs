//! Gate library, step circuits and the circuit builders.

pub mod builders;
pub mod gates;
pub mod step;
pub mod text;

pub use builders::{
    build_markovian_step, build_nonmarkovian_step, build_sequential_step, ChannelKind, MemorySpec,
};
pub use gates::{standard_gate, Gate, GateKind};
pub use step::{apply_step, CircuitWire, GateOp, StepCircuit, WireRole};
pub use text::{parse_circuit, write_circuit};
