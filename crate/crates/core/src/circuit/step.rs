use std::fmt;

use crate::circuit::gates::{swap_matrix, Gate};
use crate::error::{Error, Result};
use crate::qmath::{apply_local_unitary, reset_wire, DensityMatrix, Layout, Wire, VALIDITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WireRole {
    System,
    Environment,
    Control,
}

impl WireRole {
    pub fn name(self) -> &'static str {
        match self {
            WireRole::System => "system",
            WireRole::Environment => "environment",
            WireRole::Control => "control",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "system" => Some(WireRole::System),
            "environment" => Some(WireRole::Environment),
            "control" => Some(WireRole::Control),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitWire {
    pub wire: Wire,
    pub role: WireRole,
}

impl CircuitWire {
    pub fn qubit(label: &str, role: WireRole) -> Self {
        Self {
            wire: Wire::qubit(label),
            role,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    /// Conjugation by a named gate; wires listed in the gate's index order.
    Unitary {
        gate: Gate,
        wires: Vec<String>,
    },
    /// Trace out the wire and re-prepare it in `|0⟩⟨0|`.
    Reset {
        wire: String,
    },
    Swap {
        a: String,
        b: String,
    },
}

impl GateOp {
    pub fn unitary(gate: Gate, wires: &[&str]) -> Self {
        GateOp::Unitary {
            gate,
            wires: wires.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn reset(wire: &str) -> Self {
        GateOp::Reset { wire: wire.into() }
    }

    pub fn swap(a: &str, b: &str) -> Self {
        GateOp::Swap {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn wires(&self) -> Vec<&str> {
        match self {
            GateOp::Unitary { wires, .. } => wires.iter().map(String::as_str).collect(),
            GateOp::Reset { wire } => vec![wire.as_str()],
            GateOp::Swap { a, b } => vec![a.as_str(), b.as_str()],
        }
    }

    pub fn is_reset(&self) -> bool {
        matches!(self, GateOp::Reset { .. })
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateOp::Unitary { gate, wires } => {
                write!(f, "GATE {} {}", gate.kind(), wires.join(" "))?;
                if let Some(t) = gate.theta() {
                    write!(f, " {t:?}")?;
                }
                Ok(())
            }
            GateOp::Reset { wire } => write!(f, "RESET {wire}"),
            GateOp::Swap { a, b } => write!(f, "SWAP {a} {b}"),
        }
    }
}

/// One discrete time step: an ordered op list over a fixed wire layout.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCircuit {
    label: String,
    wires: Vec<CircuitWire>,
    ops: Vec<GateOp>,
}

impl StepCircuit {
    pub fn new(
        label: impl Into<String>,
        wires: Vec<CircuitWire>,
        ops: Vec<GateOp>,
    ) -> Result<Self> {
        let step = Self {
            label: label.into(),
            wires,
            ops,
        };
        step.check()?;
        Ok(step)
    }

    fn check(&self) -> Result<()> {
        let layout = self.layout()?;
        let sys: Vec<usize> = self
            .wires
            .iter()
            .enumerate()
            .filter(|(_, w)| w.role == WireRole::System)
            .map(|(i, _)| i)
            .collect();
        if sys.is_empty() {
            return Err(Error::Circuit("layout has no system wire".into()));
        }
        if sys.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Error::Circuit("system wires must be contiguous".into()));
        }
        for (i, op) in self.ops.iter().enumerate() {
            let wires = op.wires();
            let positions = wires
                .iter()
                .map(|w| layout.position(w))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Circuit(format!("op {i} ({op}): {e}")))?;
            for (j, p) in positions.iter().enumerate() {
                if positions[..j].contains(p) {
                    return Err(Error::Circuit(format!("op {i} ({op}) repeats a wire")));
                }
            }
            match op {
                GateOp::Unitary { gate, .. } => {
                    if wires.len() != gate.kind().arity() {
                        return Err(Error::Circuit(format!(
                            "op {i} ({op}): {} acts on {} wires",
                            gate.kind(),
                            gate.kind().arity()
                        )));
                    }
                    if positions.iter().any(|&p| self.wires[p].wire.dim != 2) {
                        return Err(Error::Circuit(format!(
                            "op {i} ({op}): gates act on qubits"
                        )));
                    }
                    if !gate.matrix().is_unitary(VALIDITY_TOL) {
                        return Err(Error::Circuit(format!("op {i} ({op}) is not unitary")));
                    }
                }
                GateOp::Reset { .. } => {
                    if self.wires[positions[0]].role == WireRole::System {
                        return Err(Error::Circuit(format!(
                            "op {i} ({op}): reset on a system wire"
                        )));
                    }
                }
                GateOp::Swap { .. } => {
                    if self.wires[positions[0]].wire.dim != self.wires[positions[1]].wire.dim {
                        return Err(Error::Circuit(format!(
                            "op {i} ({op}): swapped wires differ in dimension"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn wires(&self) -> &[CircuitWire] {
        &self.wires
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn layout(&self) -> Result<Layout> {
        Layout::new(self.wires.iter().map(|w| w.wire.clone()).collect())
    }

    pub fn labels_with_role(&self, role: WireRole) -> Vec<&str> {
        self.wires
            .iter()
            .filter(|w| w.role == role)
            .map(|w| w.wire.label.as_str())
            .collect()
    }

    pub fn system_labels(&self) -> Vec<&str> {
        self.labels_with_role(WireRole::System)
    }

    pub fn system_layout(&self) -> Layout {
        Layout::new(
            self.wires
                .iter()
                .filter(|w| w.role == WireRole::System)
                .map(|w| w.wire.clone())
                .collect(),
        )
        .expect("sub-layout of a valid layout")
    }

    /// Wires in front of / behind the contiguous system block.
    pub(crate) fn ancilla_split(&self) -> (Vec<Wire>, Vec<Wire>) {
        let first = self
            .wires
            .iter()
            .position(|w| w.role == WireRole::System)
            .expect("checked");
        let mut before = Vec::new();
        let mut after = Vec::new();
        for (i, w) in self.wires.iter().enumerate() {
            if w.role != WireRole::System {
                if i < first {
                    before.push(w.wire.clone());
                } else {
                    after.push(w.wire.clone());
                }
            }
        }
        (before, after)
    }

    pub fn qubit_count(&self) -> usize {
        self.wires.len()
    }
}

/// Executes the ops of `step` in order on the full register state.
pub fn apply_step(step: &StepCircuit, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let layout = step.layout()?;
    if rho.layout() != &layout {
        return Err(Error::Layout(format!(
            "state layout {} does not match step layout {}",
            rho.layout(),
            layout
        )));
    }
    let mut state = rho.clone();
    for op in step.ops() {
        state = match op {
            GateOp::Unitary { gate, wires } => {
                let w: Vec<&str> = wires.iter().map(String::as_str).collect();
                apply_local_unitary(&state, &gate.matrix(), &w)?
            }
            GateOp::Reset { wire } => reset_wire(&state, wire)?,
            GateOp::Swap { a, b } => {
                let d = layout.wires()[layout.position(a)?].dim;
                apply_local_unitary(&state, &swap_matrix(d), &[a, b])?
            }
        };
    }
    Ok(state)
}
