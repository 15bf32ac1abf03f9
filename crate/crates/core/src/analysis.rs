//! Markovianity diagnostics and resource accounting.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{GateOp, StepCircuit};
use crate::engine::{Evolution, Trajectory};
use crate::error::{Error, Result};
use crate::qmath::{trace_distance, DensityMatrix};

pub const DEFAULT_MONOTONE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityVerdict {
    pub monotone: bool,
    /// Step index at which the first increase above tolerance appeared.
    pub first_violation: Option<usize>,
    /// Largest single-step increase (zero if the series never rises).
    pub max_revival: f64,
}

/// Scans a series for increases larger than `tolerance`.
pub fn monotonicity_of(series: &[f64], tolerance: f64) -> MonotonicityVerdict {
    let mut first_violation = None;
    let mut max_revival: f64 = 0.0;
    for (n, w) in series.windows(2).enumerate() {
        let rise = w[1] - w[0];
        max_revival = max_revival.max(rise);
        if rise > tolerance && first_violation.is_none() {
            first_violation = Some(n + 1);
        }
    }
    MonotonicityVerdict {
        monotone: first_violation.is_none(),
        first_violation,
        max_revival,
    }
}

pub fn monotonicity_check(
    traj: &Trajectory,
    observable: &str,
    tolerance: f64,
) -> Result<MonotonicityVerdict> {
    if tolerance < 0.0 {
        return Err(Error::Parameter(format!("negative tolerance {tolerance}")));
    }
    Ok(monotonicity_of(&traj.series(observable)?, tolerance))
}

/// Sum of the positive increments of the trace distance between the reduced
/// system states of two runs of the same step circuit.
pub fn blp_witness(
    step: &StepCircuit,
    rho_a: &DensityMatrix,
    rho_b: &DensityMatrix,
    steps: usize,
) -> Result<f64> {
    if rho_a.layout().dims() != rho_b.layout().dims() {
        return Err(Error::DimensionMismatch {
            expected: rho_a.dim(),
            found: rho_b.dim(),
        });
    }
    let mut a = Evolution::new(step, rho_a)?;
    let mut b = Evolution::new(step, rho_b)?;
    let mut prev = trace_distance(&a.system_state()?, &b.system_state()?)?;
    let mut total = 0.0;
    for _ in 0..steps {
        a.advance()?;
        b.advance()?;
        let d = trace_distance(&a.system_state()?, &b.system_state()?)?;
        total += (d - prev).max(0.0);
        prev = d;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectDilation,
    Sequential,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::DirectDilation => "direct-dilation",
            Method::Sequential => "sequential",
        }
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct-dilation" => Ok(Method::DirectDilation),
            "sequential" => Ok(Method::Sequential),
            other => Err(Error::Parameter(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResourceReport {
    pub method: Method,
    /// Memory order.
    pub k: usize,
    /// Kraus rank.
    pub l: usize,
    pub steps: usize,
    pub system_qubits: usize,
    /// Environment (plus control) qubits required by `method`.
    pub ancilla_qubits: usize,
    /// `system_qubits + ancilla_qubits`.
    pub qubit_count: usize,
    /// Wires actually present in the counted step circuit.
    pub layout_qubits: usize,
    /// Every op counts one, resets included.
    pub gates_per_step: usize,
    /// Named gates and SWAPs only.
    pub gates_per_step_without_resets: usize,
    pub total_gates: usize,
}

impl ResourceReport {
    /// Flat `key = value` block, one field per line.
    pub fn to_kv(&self) -> String {
        let rows: [(&str, String); 11] = [
            ("method", self.method.to_string()),
            ("k", self.k.to_string()),
            ("l", self.l.to_string()),
            ("steps", self.steps.to_string()),
            ("system_qubits", self.system_qubits.to_string()),
            ("ancilla_qubits", self.ancilla_qubits.to_string()),
            ("qubit_count", self.qubit_count.to_string()),
            ("layout_qubits", self.layout_qubits.to_string()),
            ("gates_per_step", self.gates_per_step.to_string()),
            (
                "gates_per_step_without_resets",
                self.gates_per_step_without_resets.to_string(),
            ),
            ("total_gates", self.total_gates.to_string()),
        ];
        rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

fn ceil_log2(x: usize) -> usize {
    x.max(1).next_power_of_two().trailing_zeros() as usize
}

/// Environment qubits for a Stinespring dilation of a rank-`l` channel with
/// memory order `k`: `k·⌈log₂ l⌉`.
pub fn direct_dilation_ancillas(k: usize, l: usize) -> usize {
    k * ceil_log2(l)
}

/// Environment plus control qubits for the sequential scheme: `k + 1`.
pub fn sequential_ancillas(k: usize) -> usize {
    k + 1
}

pub fn resource_count(
    step: &StepCircuit,
    steps: usize,
    method: Method,
    k: usize,
    l: usize,
) -> ResourceReport {
    let system_qubits = step.system_labels().len();
    let ancilla_qubits = match method {
        Method::DirectDilation => direct_dilation_ancillas(k, l),
        Method::Sequential => sequential_ancillas(k),
    };
    let gates_per_step = step.ops().len();
    let resets = step
        .ops()
        .iter()
        .filter(|o| matches!(o, GateOp::Reset { .. }))
        .count();
    ResourceReport {
        method,
        k,
        l,
        steps,
        system_qubits,
        ancilla_qubits,
        qubit_count: system_qubits + ancilla_qubits,
        layout_qubits: step.qubit_count(),
        gates_per_step,
        gates_per_step_without_resets: gates_per_step - resets,
        total_gates: steps * gates_per_step,
    }
}
