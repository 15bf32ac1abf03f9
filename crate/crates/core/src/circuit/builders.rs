//! Step-circuit builders for Markovian, memory-bearing and sequential
//! (control-qubit) channel simulation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::channels::{KrausChannel, Pauli};
use crate::circuit::gates::{Gate, GateKind};
use crate::circuit::step::{CircuitWire, GateOp, StepCircuit, WireRole};
use crate::error::{Error, Result};

/// Tolerance for recognising scaled Pauli operators.
const PAULI_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    Dephasing,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::Dephasing => "dephasing",
        }
    }
}

impl FromStr for ChannelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "dephasing" => Ok(ChannelKind::Dephasing),
            other => Err(Error::Builder(format!("unknown channel kind `{other}`"))),
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Memory order `k` and the storage angles `θ¹..θᵏ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MemorySpec {
    thetas: Vec<f64>,
}

impl MemorySpec {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::Builder("memory order k must be at least 1".into()));
        }
        check_angles(&thetas)?;
        Ok(Self { thetas })
    }

    /// Checks `k` against the angle count.
    pub fn with_order(k: usize, thetas: Vec<f64>) -> Result<Self> {
        if thetas.len() != k {
            return Err(Error::Builder(format!(
                "thetas has {} entries but k = {k}",
                thetas.len()
            )));
        }
        Self::new(thetas)
    }

    pub fn k(&self) -> usize {
        self.thetas.len()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

fn check_angles(thetas: &[f64]) -> Result<()> {
    match thetas.iter().find(|t| !(0.0..2.0 * PI).contains(*t)) {
        Some(t) => Err(Error::Builder(format!("angle {t} outside [0, 2π)"))),
        None => Ok(()),
    }
}

/// Environment wire labels: `e` for a single wire, `e1..ek` otherwise.
fn env_labels(k: usize) -> Vec<String> {
    if k == 1 {
        vec!["e".into()]
    } else {
        (1..=k).map(|i| format!("e{i}")).collect()
    }
}

/// Storage rotation on `env` mirroring the kind's Markovian `Ĉ`: controlled
/// on `q` for amplitude damping, unconditional for dephasing.
fn storage_rotation(kind: ChannelKind, theta: f64, env: &str) -> GateOp {
    match kind {
        ChannelKind::AmplitudeDamping => GateOp::unitary(Gate::cry(theta), &["q", env]),
        ChannelKind::Dephasing => GateOp::unitary(Gate::ry(theta), &[env]),
    }
}

fn coupling(kind: ChannelKind, env: &str) -> GateOp {
    let g = match kind {
        ChannelKind::AmplitudeDamping => GateKind::Cnot,
        ChannelKind::Dephasing => GateKind::Cz,
    };
    GateOp::unitary(Gate::fixed(g), &[env, "q"])
}

/// One memoryless step `U_SE = Ŝ Ĉ` followed by resetting the environment.
pub fn build_markovian_step(kind: ChannelKind, theta: f64) -> Result<StepCircuit> {
    check_angles(&[theta])?;
    let wires = vec![
        CircuitWire::qubit("q", WireRole::System),
        CircuitWire::qubit("e", WireRole::Environment),
    ];
    let ops = vec![
        storage_rotation(kind, theta, "e"),
        coupling(kind, "e"),
        GateOp::reset("e"),
    ];
    StepCircuit::new(format!("markovian-{kind}"), wires, ops)
}

/// One step with memory of order `k`: rotations on every environment wire,
/// coupling through `e1`, reset of `e1` only, then a SWAP chain shifting the
/// stored contributions down by one order.
pub fn build_nonmarkovian_step(kind: ChannelKind, mem: &MemorySpec) -> Result<StepCircuit> {
    let k = mem.k();
    if k < 2 {
        return Err(Error::Builder(
            "memory order k must be at least 2; use build_markovian_step for k = 1".into(),
        ));
    }
    let env = env_labels(k);
    let mut wires = vec![CircuitWire::qubit("q", WireRole::System)];
    wires.extend(
        env.iter()
            .map(|e| CircuitWire::qubit(e, WireRole::Environment)),
    );

    let mut ops: Vec<GateOp> = mem
        .thetas()
        .iter()
        .zip(&env)
        .map(|(&t, e)| storage_rotation(kind, t, e))
        .collect();
    ops.push(coupling(kind, &env[0]));
    ops.push(GateOp::reset(&env[0]));
    for pair in env.windows(2) {
        ops.push(GateOp::swap(&pair[0], &pair[1]));
    }
    StepCircuit::new(format!("non-markovian-{kind}-k{k}"), wires, ops)
}

/// Step that applies the Kraus operators one after another with a single
/// reusable environment qubit and a control qubit `c`.
///
/// `c` starts each step flipped to `|1⟩` ("no branch fired"). For every
/// non-identity operator `√w·P`: a controlled `R_y` on `e` (control `c`)
/// loads amplitude `√w`, a controlled `P` (control `e`) acts on `q`, a CNOT
/// from `e` clears `c` so later operators skip this branch, and `e` is reset.
/// Operators proportional to the identity are carried by the branch where
/// nothing fired. `c` is reset at the end of the step.
///
/// With a memory spec of order `k ≥ 2` the environment becomes `e1..ek`:
/// `e1` is the firing qubit, and after the operators `R_y(θʲ)` on `ej`
/// (j ≥ 2) is applied conditioned on some branch having fired this step,
/// followed by the SWAP chain. `θ¹` is unused because the firing angles come
/// from the channel weights.
pub fn build_sequential_step(ch: &KrausChannel, mem: Option<&MemorySpec>) -> Result<StepCircuit> {
    if ch.dim() != 2 {
        return Err(Error::Builder(format!(
            "sequential builder needs a single-qubit channel, got dimension {}",
            ch.dim()
        )));
    }
    ch.ensure_valid()?;
    let terms = ch
        .operators()
        .iter()
        .enumerate()
        .map(|(i, om)| {
            Pauli::decompose_scaled(om, PAULI_TOL).ok_or_else(|| {
                Error::Builder(format!(
                    "operator {i} of `{}` is not a scaled Pauli; use stinespring_dilate for general channels",
                    ch.label()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let k = mem.map_or(1, MemorySpec::k);
    let env = env_labels(k);
    let fire = env[0].as_str();
    let mut wires = vec![
        CircuitWire::qubit("c", WireRole::Control),
        CircuitWire::qubit("q", WireRole::System),
    ];
    wires.extend(
        env.iter()
            .map(|e| CircuitWire::qubit(e, WireRole::Environment)),
    );

    let mut ops = vec![GateOp::unitary(Gate::fixed(GateKind::X), &["c"])];
    for (pauli, weight) in terms {
        let controlled = match pauli {
            Pauli::I => continue,
            Pauli::X => GateKind::Cnot,
            Pauli::Y => GateKind::Cy,
            Pauli::Z => GateKind::Cz,
        };
        let theta = 2.0 * weight.min(1.0).asin();
        ops.push(GateOp::unitary(Gate::cry(theta), &["c", fire]));
        ops.push(GateOp::unitary(Gate::fixed(controlled), &[fire, "q"]));
        ops.push(GateOp::unitary(Gate::fixed(GateKind::Cnot), &[fire, "c"]));
        ops.push(GateOp::reset(fire));
    }
    if let Some(mem) = mem.filter(|m| m.k() >= 2) {
        // c = |1⟩ now marks "a branch fired"
        ops.push(GateOp::unitary(Gate::fixed(GateKind::X), &["c"]));
        for (t, e) in mem.thetas().iter().zip(&env).skip(1) {
            ops.push(GateOp::unitary(Gate::cry(*t), &["c", e]));
        }
        for pair in env.windows(2) {
            ops.push(GateOp::swap(&pair[0], &pair[1]));
        }
    }
    ops.push(GateOp::reset("c"));
    let label = match mem {
        Some(m) if m.k() >= 2 => format!("sequential-{}-k{}", ch.label(), m.k()),
        _ => format!("sequential-{}", ch.label()),
    };
    StepCircuit::new(label, wires, ops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        amplitude_damping, apply_channel, dephasing, pauli_channel, ChannelParams,
    };
    use crate::circuit::step::apply_step;
    use crate::qmath::{reduce_to, trace_distance, DensityMatrix, Layout};

    fn one_step(step: &StepCircuit, rho: &DensityMatrix) -> DensityMatrix {
        let (before, after) = step.ancilla_split();
        let zero = |ws: Vec<crate::qmath::Wire>| {
            let l = Layout::new(ws).unwrap();
            DensityMatrix::basis(0, l).unwrap()
        };
        let mut full = rho.clone();
        if !before.is_empty() {
            full = zero(before).tensor(&full).unwrap();
        }
        if !after.is_empty() {
            full = full.tensor(&zero(after)).unwrap();
        }
        let out = apply_step(step, &full).unwrap();
        reduce_to(&out, &["q"]).unwrap()
    }

    #[test]
    fn markovian_ops_follow_the_decomposition() {
        let s = build_markovian_step(ChannelKind::AmplitudeDamping, 0.3).unwrap();
        let text: Vec<String> = s.ops().iter().map(|o| o.to_string()).collect();
        assert_eq!(text, vec!["GATE CRy q e 0.3", "GATE CNOT e q", "RESET e"]);
        let d = build_markovian_step(ChannelKind::Dephasing, 0.3).unwrap();
        let text: Vec<String> = d.ops().iter().map(|o| o.to_string()).collect();
        assert_eq!(text, vec!["GATE Ry e 0.3", "GATE CZ e q", "RESET e"]);
    }

    #[test]
    fn markovian_examples() {
        let q = Layout::qubits(&["q"]).unwrap();
        let one = DensityMatrix::basis(1, q.clone()).unwrap();
        let id = build_markovian_step(ChannelKind::AmplitudeDamping, 0.0).unwrap();
        assert!(one_step(&id, &one).matrix().approx_eq(one.matrix(), 1e-15));

        let ad = build_markovian_step(ChannelKind::AmplitudeDamping, PI / 10.0).unwrap();
        let p1 = one_step(&ad, &one).matrix().get(1, 1).re;
        assert!((p1 - (PI / 20.0).cos().powi(2)).abs() < 1e-12);
        assert!((p1 - 0.975_528_258_147_576_8).abs() < 1e-12);

        let plus = DensityMatrix::pure(&[crate::qmath::re(1.0); 2], q).unwrap();
        let dp = build_markovian_step(ChannelKind::Dephasing, PI / 5.0).unwrap();
        let pp = one_step(&dp, &plus).expectation(plus.matrix()).unwrap();
        assert!((pp - 0.904_508_497_187_473_7).abs() < 1e-12);
    }

    #[test]
    fn markovian_steps_equal_their_channels() {
        let mut rng = crate::random::seeded(31);
        for theta in [0.2, PI / 10.0, 1.7, 4.0] {
            let p = ChannelParams::from_theta(theta).unwrap();
            for (kind, ch) in [
                (
                    ChannelKind::AmplitudeDamping,
                    amplitude_damping(&p).unwrap(),
                ),
                (ChannelKind::Dephasing, dephasing(&p).unwrap()),
            ] {
                let step = build_markovian_step(kind, theta).unwrap();
                for rho in crate::random::random_qubit_states(&mut rng, 10) {
                    let a = one_step(&step, &rho);
                    let b = apply_channel(&ch, &rho).unwrap();
                    assert!(a.matrix().approx_eq(b.matrix(), 1e-10), "{kind} θ={theta}");
                }
            }
        }
    }

    #[test]
    fn nonmarkovian_layout_and_ops() {
        let mem = MemorySpec::new(vec![0.1, 0.2, 0.3]).unwrap();
        let s = build_nonmarkovian_step(ChannelKind::AmplitudeDamping, &mem).unwrap();
        assert_eq!(s.qubit_count(), 4);
        let text: Vec<String> = s.ops().iter().map(|o| o.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "GATE CRy q e1 0.1",
                "GATE CRy q e2 0.2",
                "GATE CRy q e3 0.3",
                "GATE CNOT e1 q",
                "RESET e1",
                "SWAP e1 e2",
                "SWAP e2 e3",
            ]
        );
        let d = build_nonmarkovian_step(ChannelKind::Dephasing, &mem).unwrap();
        assert!(d.ops()[0].to_string().starts_with("GATE Ry e1"));
        assert_eq!(d.ops()[3].to_string(), "GATE CZ e1 q");
    }

    #[test]
    fn nonmarkovian_errors() {
        let one = MemorySpec::new(vec![0.1]).unwrap();
        assert!(build_nonmarkovian_step(ChannelKind::Dephasing, &one).is_err());
        assert!(MemorySpec::with_order(3, vec![0.1, 0.2]).is_err());
        assert!(MemorySpec::new(vec![0.1, 7.0]).is_err());
        assert!(MemorySpec::new(vec![]).is_err());
        assert!("bogus".parse::<ChannelKind>().is_err());
    }

    #[test]
    fn sequential_identity_and_errors() {
        let id = build_sequential_step(&pauli_channel(0.0, 0.0, 0.0).unwrap(), None).unwrap();
        assert_eq!(id.qubit_count(), 3);
        let mut rng = crate::random::seeded(8);
        for rho in crate::random::random_qubit_states(&mut rng, 5) {
            assert!(one_step(&id, &rho).matrix().approx_eq(rho.matrix(), 1e-14));
        }
        let ad = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        assert!(matches!(
            build_sequential_step(&ad, None),
            Err(Error::Builder(_))
        ));
        let two = KrausChannel::identity(4);
        assert!(matches!(
            build_sequential_step(&two, None),
            Err(Error::Builder(_))
        ));
    }

    #[test]
    fn sequential_step_close_to_channel() {
        let eps = 0.01;
        let ch = pauli_channel(eps, eps, eps).unwrap();
        let step = build_sequential_step(&ch, None).unwrap();
        assert_eq!(step.ops().len(), 1 + 3 * 4 + 1);
        let mut rng = crate::random::seeded(12);
        for rho in crate::random::random_qubit_states(&mut rng, 20) {
            let a = one_step(&step, &rho);
            let b = apply_channel(&ch, &rho).unwrap();
            assert!(trace_distance(&a, &b).unwrap() <= 5e-4);
        }
    }

    #[test]
    fn sequential_memory_layout() {
        let ch = pauli_channel(0.05, 0.0, 0.05).unwrap();
        let mem = MemorySpec::new(vec![0.0, 0.4, 0.9]).unwrap();
        let s = build_sequential_step(&ch, Some(&mem)).unwrap();
        assert_eq!(s.qubit_count(), 1 + 3 + 1);
        assert_eq!(
            s.labels_with_role(WireRole::Environment),
            vec!["e1", "e2", "e3"]
        );
    }
}
