//! Density-matrix simulation of open quantum systems with quantum circuits.
//!
//! A system qubit is coupled to environment qubits through small step
//! circuits. Resetting the whole environment after every step gives
//! memoryless (Markovian) dynamics. Keeping part of it and shifting it with
//! SWAPs gives dynamics with memory of order `k`. Any Pauli-type channel can
//! also be applied one Kraus operator at a time, which needs one environment
//! qubit and one control qubit whatever the Kraus rank.
//!
//! Modules, bottom up:
//! - [`qmath`]: complex matrices, density matrices, tensor products and
//!   partial traces.
//! - [`channels`]: Kraus channels, Stinespring dilation, superoperators and
//!   the sequential decomposition.
//! - [`circuit`]: gates, step circuits and their builders.
//! - [`engine`]: runs a step circuit repeatedly and records observables.
//! - [`analysis`]: monotonicity and trace-distance diagnostics, resource
//!   counts.
//! - [`experiment`]: configuration files, presets and output writers behind
//!   the `simulate` binary.

pub mod analysis;
pub mod channels;
pub mod circuit;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod qmath;
pub mod random;

pub use error::{Error, Result};
