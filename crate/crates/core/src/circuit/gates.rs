use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qmath::{c, re, tensor_product, ComplexMatrix, C64};

/// Named gates usable in step circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    Ry,
    /// Controlled-X; first wire is the control.
    Cnot,
    /// Controlled-Y; first wire is the control.
    Cy,
    /// Controlled-Z; first wire is the control.
    Cz,
    Swap,
    /// Controlled `R_y(θ)`; first wire is the control.
    CRy,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::Ry,
        GateKind::Cnot,
        GateKind::Cy,
        GateKind::Cz,
        GateKind::Swap,
        GateKind::CRy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::Ry => "Ry",
            GateKind::Cnot => "CNOT",
            GateKind::Cy => "CY",
            GateKind::Cz => "CZ",
            GateKind::Swap => "SWAP",
            GateKind::CRy => "CRy",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::Y | GateKind::Z | GateKind::H | GateKind::Ry => 1,
            _ => 2,
        }
    }

    pub fn takes_angle(self) -> bool {
        matches!(self, GateKind::Ry | GateKind::CRy)
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Gate(format!("unknown gate `{s}`")))
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate kind together with its angle, if it takes one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    kind: GateKind,
    theta: Option<f64>,
}

impl Gate {
    pub fn new(kind: GateKind, theta: Option<f64>) -> Result<Self> {
        match (kind.takes_angle(), theta) {
            (true, None) => Err(Error::Gate(format!("{kind} requires an angle"))),
            (false, Some(_)) => Err(Error::Gate(format!("{kind} takes no angle"))),
            (_, Some(t)) if !t.is_finite() => {
                Err(Error::Gate(format!("{kind} angle {t} is not finite")))
            }
            _ => Ok(Self { kind, theta }),
        }
    }

    pub fn fixed(kind: GateKind) -> Self {
        Self::new(kind, None).expect("gate without angle")
    }

    pub fn ry(theta: f64) -> Self {
        Self::new(GateKind::Ry, Some(theta)).expect("finite angle")
    }

    pub fn cry(theta: f64) -> Self {
        Self::new(GateKind::CRy, Some(theta)).expect("finite angle")
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn matrix(&self) -> ComplexMatrix {
        gate_matrix(self.kind, self.theta)
    }
}

/// Canonical matrix for a named gate.
///
/// `Ry(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`, so
/// `⟨1|Ry(θ)|0⟩ = sin(θ/2)`. Two-qubit gates put the control first.
pub fn standard_gate(name: &str, theta: Option<f64>) -> Result<ComplexMatrix> {
    let kind: GateKind = name.parse()?;
    Ok(Gate::new(kind, theta)?.matrix())
}

fn gate_matrix(kind: GateKind, theta: Option<f64>) -> ComplexMatrix {
    let z = re(0.0);
    let o = re(1.0);
    let m2 = |e: [C64; 4]| ComplexMatrix::from_row_major(2, &e).expect("2x2");
    match kind {
        GateKind::X => m2([z, o, o, z]),
        GateKind::Y => m2([z, c(0.0, -1.0), c(0.0, 1.0), z]),
        GateKind::Z => m2([o, z, z, re(-1.0)]),
        GateKind::H => m2([o, o, o, re(-1.0)]).scale_real(std::f64::consts::FRAC_1_SQRT_2),
        GateKind::Ry => ry(theta.expect("validated angle")),
        GateKind::Cnot => controlled(&gate_matrix(GateKind::X, None)),
        GateKind::Cy => controlled(&gate_matrix(GateKind::Y, None)),
        GateKind::Cz => controlled(&gate_matrix(GateKind::Z, None)),
        GateKind::CRy => controlled(&ry(theta.expect("validated angle"))),
        GateKind::Swap => {
            let mut m = ComplexMatrix::zeros(4);
            m.set(0, 0, o);
            m.set(1, 2, o);
            m.set(2, 1, o);
            m.set(3, 3, o);
            m
        }
    }
}

fn ry(theta: f64) -> ComplexMatrix {
    let (s, cs) = (theta / 2.0).sin_cos();
    ComplexMatrix::from_real(2, &[cs, -s, s, cs]).expect("2x2")
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ U`.
pub fn controlled(u: &ComplexMatrix) -> ComplexMatrix {
    let p0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, 0.0]).expect("2x2");
    let p1 = ComplexMatrix::from_real(2, &[0.0, 0.0, 0.0, 1.0]).expect("2x2");
    &tensor_product(&p0, &ComplexMatrix::identity(u.dim())) + &tensor_product(&p1, u)
}

/// SWAP on two wires of dimension `d`.
pub fn swap_matrix(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d);
    for a in 0..d {
        for b in 0..d {
            m.set(b * d + a, a * d + b, re(1.0));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ry_examples() {
        assert!(standard_gate("Ry", Some(0.0))
            .unwrap()
            .approx_eq(&ComplexMatrix::identity(2), 0.0));
        let out = standard_gate("Ry", Some(PI))
            .unwrap()
            .apply(&[re(1.0), re(0.0)]);
        assert!((out[0]).norm() < 1e-15 && (out[1] - re(1.0)).norm() < 1e-15);
        let t = 0.7;
        let g = standard_gate("Ry", Some(t)).unwrap();
        assert!((g.get(1, 0).re - (t / 2.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn cnot_control_is_first_wire() {
        let cnot = standard_gate("CNOT", None).unwrap();
        // |10⟩ → |11⟩
        let out = cnot.apply(&[re(0.0), re(0.0), re(1.0), re(0.0)]);
        assert_eq!(out, vec![re(0.0), re(0.0), re(0.0), re(1.0)]);
    }

    #[test]
    fn every_gate_is_unitary() {
        for k in GateKind::ALL {
            let theta = k.takes_angle().then_some(1.234);
            let g = Gate::new(k, theta).unwrap();
            assert!(g.matrix().is_unitary(1e-12), "{k}");
            assert_eq!(g.matrix().dim(), 1 << k.arity());
        }
    }

    #[test]
    fn name_and_angle_errors() {
        assert!(matches!(
            standard_gate("Toffoli", None),
            Err(Error::Gate(_))
        ));
        assert!(matches!(standard_gate("Ry", None), Err(Error::Gate(_))));
        assert!(matches!(standard_gate("CRy", None), Err(Error::Gate(_))));
        assert!(matches!(standard_gate("X", Some(1.0)), Err(Error::Gate(_))));
    }

    #[test]
    fn swap_matches_named_gate() {
        assert_eq!(swap_matrix(2), standard_gate("SWAP", None).unwrap());
        assert!(swap_matrix(3).is_unitary(0.0));
    }
}
