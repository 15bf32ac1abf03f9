//! Dense complex linear algebra: matrices, density matrices over labelled
//! wire layouts, tensor products and partial traces.
//!
//! Ordering convention: in `a ⊗ b` the first factor owns the most
//! significant index block, and the first wire of a [`Layout`] is the
//! first tensor factor.

pub mod matrix;
pub mod ops;
pub mod state;

pub use matrix::{c, re, ComplexMatrix, C64, RECONSTRUCTION_TOL, VALIDITY_TOL};
pub use ops::{
    apply_local_unitary, embed_operator, partial_trace, psd_sqrt, reduce_to, reset_wire,
    tensor_product, trace_distance,
};
pub use state::{DensityMatrix, Layout, Wire};
