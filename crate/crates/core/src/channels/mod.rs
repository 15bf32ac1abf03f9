//! Kraus channels: construction, validation, application, Stinespring
//! dilation, superoperator algebra and sequential decomposition.
//!
//! Superoperators use column-stacking vectorization throughout, so
//! `ρ ↦ A ρ B` has matrix `Bᵀ ⊗ A`.

pub mod decompose;
pub mod dilation;
pub mod file;
pub mod kraus;
pub mod superop;

pub use decompose::{apply_factors, sequential_factors, FactorMode};
pub use dilation::{dilation_env_dim, stinespring_dilate};
pub use file::{load_channel_file, parse_channel_spec, write_channel_spec};
pub use kraus::{
    amplitude_damping, apply_channel, dephasing, pauli_channel, pauli_mixture, ChannelParams,
    KrausChannel, Pauli, ValidationReport,
};
pub use superop::{
    compose, cp_witness, intermediate_map, to_superoperator, Superoperator, MAX_CONDITION,
};
