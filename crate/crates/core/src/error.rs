use thiserror::Error;

/// Errors produced anywhere in the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square or has an invalid shape: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown wire label `{0}`")]
    UnknownWire(String),

    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("matrix is not positive semidefinite: {0}")]
    PsdViolation(String),

    #[error("invalid channel parameter: {0}")]
    Parameter(String),

    #[error("channel `{label}` is not complete: deviation {deviation:.3e}")]
    IncompleteChannel { label: String, deviation: f64 },

    #[error("superoperator is not invertible (condition number {condition:.3e})")]
    NotInvertible { condition: f64 },

    #[error("sequential decomposition failed: {0}")]
    Decomposition(String),

    #[error("invalid gate: {0}")]
    Gate(String),

    #[error("invalid circuit: {0}")]
    Circuit(String),

    #[error("circuit builder error: {0}")]
    Builder(String),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("invariant `{invariant}` violated at step {step}: {detail}")]
    Invariant {
        invariant: &'static str,
        step: usize,
        detail: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration field `{field}`: {message}")]
    Config { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
