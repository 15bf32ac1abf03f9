//! Line-oriented step-circuit format.
//!
//! ```text
//! LABEL markovian-amplitude-damping
//! WIRE q 2 system
//! WIRE e 2 environment
//! GATE CRy q e 0.3141592653589793
//! GATE CNOT e q
//! RESET e
//! SWAP e1 e2
//! ```
//!
//! Blank lines and `#` comments are ignored. Angles are written in shortest
//! round-trip form so a dump re-parses to an identical circuit.

use crate::circuit::gates::{Gate, GateKind};
use crate::circuit::step::{CircuitWire, GateOp, StepCircuit, WireRole};
use crate::error::{Error, Result};
use crate::qmath::Wire;

pub fn write_circuit(step: &StepCircuit) -> String {
    let mut out = format!("LABEL {}\n", step.label());
    for w in step.wires() {
        out.push_str(&format!(
            "WIRE {} {} {}\n",
            w.wire.label,
            w.wire.dim,
            w.role.name()
        ));
    }
    for op in step.ops() {
        out.push_str(&op.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_circuit(text: &str) -> Result<StepCircuit> {
    let mut label = String::new();
    let mut wires = Vec::new();
    let mut ops = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("non-empty line");
        let rest: Vec<&str> = tokens.collect();
        match head {
            "LABEL" => label = rest.join(" "),
            "WIRE" => {
                let [name, dim, role] = rest[..] else {
                    return Err(err("WIRE needs <label> <dim> <role>".into()));
                };
                let dim: usize = dim
                    .parse()
                    .map_err(|_| err(format!("bad dimension `{dim}`")))?;
                let role =
                    WireRole::parse(role).ok_or_else(|| err(format!("unknown role `{role}`")))?;
                wires.push(CircuitWire {
                    wire: Wire::new(name, dim),
                    role,
                });
            }
            "GATE" => {
                let (&name, args) = rest
                    .split_first()
                    .ok_or_else(|| err("GATE needs a gate name".into()))?;
                let kind: GateKind = name.parse().map_err(|e: Error| err(e.to_string()))?;
                let expected = kind.arity() + usize::from(kind.takes_angle());
                if args.len() != expected {
                    return Err(err(format!(
                        "{kind} expects {} wire(s){}",
                        kind.arity(),
                        if kind.takes_angle() {
                            " and an angle"
                        } else {
                            ""
                        }
                    )));
                }
                let theta = if kind.takes_angle() {
                    let t = args[kind.arity()];
                    Some(
                        t.parse::<f64>()
                            .map_err(|_| err(format!("bad angle `{t}`")))?,
                    )
                } else {
                    None
                };
                let gate = Gate::new(kind, theta).map_err(|e| err(e.to_string()))?;
                ops.push(GateOp::unitary(gate, &args[..kind.arity()]));
            }
            "RESET" => {
                let [w] = rest[..] else {
                    return Err(err("RESET needs exactly one wire".into()));
                };
                ops.push(GateOp::reset(w));
            }
            "SWAP" => {
                let [a, b] = rest[..] else {
                    return Err(err("SWAP needs exactly two wires".into()));
                };
                ops.push(GateOp::swap(a, b));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    StepCircuit::new(label, wires, ops)
}
