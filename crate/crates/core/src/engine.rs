//! Repeated step application and per-step observable records.

use crate::circuit::{apply_step, StepCircuit};
use crate::error::{Error, Result};
use crate::qmath::{re, reduce_to, ComplexMatrix, DensityMatrix, Layout, C64, VALIDITY_TOL};

/// Largest tolerated deviation of a recorded trace from one.
pub const TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue tolerated in a recorded state.
pub const PSD_TOL: f64 = 1e-9;

/// Named projector on the system wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    name: String,
    projector: ComplexMatrix,
}

impl Observable {
    pub fn new(name: impl Into<String>, projector: ComplexMatrix) -> Result<Self> {
        let name = name.into();
        let sq = &projector * &projector;
        if !projector.is_hermitian(VALIDITY_TOL) || !sq.approx_eq(&projector, VALIDITY_TOL) {
            return Err(Error::Parameter(format!(
                "observable `{name}` is not a projector"
            )));
        }
        Ok(Self { name, projector })
    }

    /// `|v⟩⟨v|` for a (normalised on the fly) vector.
    pub fn population(name: impl Into<String>, v: &[C64]) -> Result<Self> {
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
        Self::new(name, ComplexMatrix::outer(&v))
    }

    /// Single-qubit populations: `0`, `1`, `+`, `-`.
    pub fn qubit(label: &str) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = match label {
            "0" => [re(1.0), re(0.0)],
            "1" => [re(0.0), re(1.0)],
            "+" => [re(s), re(s)],
            "-" => [re(s), re(-s)],
            other => return Err(Error::UnknownObservable(other.to_string())),
        };
        Self::population(format!("p{label}"), &v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn projector(&self) -> &ComplexMatrix {
        &self.projector
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub step: usize,
    /// Observable values in the order the observables were given.
    pub values: Vec<(String, f64)>,
    pub trace: f64,
    pub purity: f64,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step_count: usize,
    pub records: Vec<Record>,
}

impl Trajectory {
    pub fn observable_names(&self) -> Vec<&str> {
        self.records
            .first()
            .map(|r| r.values.iter().map(|(n, _)| n.as_str()).collect())
            .unwrap_or_default()
    }

    pub fn series(&self, name: &str) -> Result<Vec<f64>> {
        self.records
            .iter()
            .map(|r| {
                r.values
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| Error::UnknownObservable(name.to_string()))
            })
            .collect()
    }
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

/// Full register state of `step` holding `rho0_system` on the system wires
/// and `|0⟩⟨0|` on every other wire.
pub fn initial_state(step: &StepCircuit, rho0_system: &DensityMatrix) -> Result<DensityMatrix> {
    let sys = step.system_layout();
    if rho0_system.layout().dims() != sys.dims() {
        return Err(Error::Layout(format!(
            "initial state layout {} does not match system wires {}",
            rho0_system.layout(),
            sys
        )));
    }
    let mut full = rho0_system.with_layout(sys)?;
    let (before, after) = step.ancilla_split();
    if !before.is_empty() {
        full = DensityMatrix::basis(0, Layout::new(before)?)?.tensor(&full)?;
    }
    if !after.is_empty() {
        full = full.tensor(&DensityMatrix::basis(0, Layout::new(after)?)?)?;
    }
    Ok(full)
}

/// A running simulation: the full register state advanced one step at a time.
#[derive(Debug, Clone)]
pub struct Evolution<'a> {
    step: &'a StepCircuit,
    state: DensityMatrix,
    steps_done: usize,
}

impl<'a> Evolution<'a> {
    pub fn new(step: &'a StepCircuit, rho0_system: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            step,
            state: initial_state(step, rho0_system)?,
            steps_done: 0,
        })
    }

    pub fn advance(&mut self) -> Result<()> {
        self.state = apply_step(self.step, &self.state)?;
        self.steps_done += 1;
        Ok(())
    }

    pub fn steps_done(&self) -> usize {
        self.steps_done
    }

    pub fn full_state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn system_state(&self) -> Result<DensityMatrix> {
        reduce_to(&self.state, &self.step.system_labels())
    }
}

fn check_record(rho: &DensityMatrix, step: usize) -> Result<(f64, f64)> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::Invariant {
            invariant: "unit trace",
            step,
            detail: format!("trace = {trace}"),
        });
    }
    if !rho.matrix().is_hermitian(VALIDITY_TOL) {
        return Err(Error::Invariant {
            invariant: "hermiticity",
            step,
            detail: "reduced state is not Hermitian".into(),
        });
    }
    let min = rho.min_eigenvalue();
    if min < -PSD_TOL {
        return Err(Error::Invariant {
            invariant: "positivity",
            step,
            detail: format!("minimum eigenvalue {min:.3e}"),
        });
    }
    Ok((trace, min))
}

fn record(rho: &DensityMatrix, step: usize, observables: &[Observable]) -> Result<Record> {
    let (trace, min_eigenvalue) = check_record(rho, step)?;
    let values = observables
        .iter()
        .map(|o| Ok((o.name().to_string(), rho.expectation(o.projector())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Record {
        step,
        values,
        trace,
        purity: rho.purity(),
        min_eigenvalue,
    })
}

/// Runs `steps` applications of `step`, recording the reduced system state
/// before the first step and after each one.
pub fn run(
    step: &StepCircuit,
    rho0_system: &DensityMatrix,
    steps: usize,
    observables: &[Observable],
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(Error::Parameter("step count must be at least 1".into()));
    }
    let sys_dim = step.system_layout().dim();
    if let Some(bad) = observables.iter().find(|o| o.projector().dim() != sys_dim) {
        return Err(Error::DimensionMismatch {
            expected: sys_dim,
            found: bad.projector().dim(),
        });
    }
    let mut evo = Evolution::new(step, rho0_system)?;
    let mut records = Vec::with_capacity(steps + 1);
    records.push(record(&evo.system_state()?, 0, observables)?);
    for n in 1..=steps {
        evo.advance()?;
        records.push(record(&evo.system_state()?, n, observables)?);
    }
    Ok(Trajectory {
        step_count: steps,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_markovian_step, ChannelKind, CircuitWire, WireRole};
    use std::f64::consts::PI;

    fn q() -> Layout {
        Layout::qubits(&["q"]).unwrap()
    }

    #[test]
    fn identity_step_keeps_record() {
        let step = StepCircuit::new(
            "id",
            vec![CircuitWire::qubit("q", WireRole::System)],
            vec![],
        )
        .unwrap();
        let rho = DensityMatrix::basis(1, q()).unwrap();
        let obs = [Observable::qubit("1").unwrap()];
        let t = run(&step, &rho, 1, &obs).unwrap();
        assert_eq!(t.records.len(), 2);
        assert_eq!(t.records[0].values, t.records[1].values);
        assert_eq!(t.records[1].step, 1);
    }

    #[test]
    fn amplitude_damping_geometric_decay() {
        let step = build_markovian_step(ChannelKind::AmplitudeDamping, PI / 10.0).unwrap();
        let rho = DensityMatrix::basis(1, q()).unwrap();
        let t = run(&step, &rho, 50, &[Observable::qubit("1").unwrap()]).unwrap();
        let r = 1.0 - (PI / 20.0).sin().powi(2);
        for (n, p) in t.series("p1").unwrap().iter().enumerate() {
            assert!((p - r.powi(n as i32)).abs() < 1e-9, "step {n}");
        }
    }

    #[test]
    fn dephasing_closed_form() {
        let step = build_markovian_step(ChannelKind::Dephasing, PI / 5.0).unwrap();
        let plus = DensityMatrix::pure(&[re(1.0), re(1.0)], q()).unwrap();
        let t = run(&step, &plus, 100, &[Observable::qubit("+").unwrap()]).unwrap();
        let f = 1.0 - 2.0 * (PI / 10.0).sin().powi(2);
        let s = t.series("p+").unwrap();
        for (n, p) in s.iter().enumerate() {
            assert!((p - (1.0 + f.powi(n as i32)) / 2.0).abs() < 1e-9);
        }
        assert!((s[100] - 0.5).abs() < 0.05);
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&DensityMatrix::basis(0, q()).unwrap()) - 1.0).abs() < 1e-15);
        assert!((purity(&DensityMatrix::maximally_mixed(q()).unwrap()) - 0.5).abs() < 1e-15);
        let step = build_markovian_step(ChannelKind::AmplitudeDamping, PI / 10.0).unwrap();
        let t = run(&step, &DensityMatrix::basis(1, q()).unwrap(), 1, &[]).unwrap();
        let g = (PI / 20.0).sin();
        assert!((t.records[1].purity - (g.powi(4) + (1.0 - g * g).powi(2))).abs() < 1e-12);
    }

    #[test]
    fn run_errors() {
        let step = build_markovian_step(ChannelKind::Dephasing, 0.1).unwrap();
        let rho = DensityMatrix::basis(0, q()).unwrap();
        assert!(run(&step, &rho, 0, &[]).is_err());
        let big = Observable::new("big", ComplexMatrix::identity(4)).unwrap();
        assert!(matches!(
            run(&step, &rho, 3, &[big]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(Observable::new("half", ComplexMatrix::identity(2).scale_real(0.5)).is_err());
        assert!(matches!(
            Observable::qubit("2"),
            Err(Error::UnknownObservable(_))
        ));
        let t = run(&step, &rho, 2, &[Observable::qubit("0").unwrap()]).unwrap();
        assert!(matches!(t.series("p1"), Err(Error::UnknownObservable(_))));
    }
}
