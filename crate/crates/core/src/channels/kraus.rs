use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::qmath::{c, re, ComplexMatrix, DensityMatrix, RECONSTRUCTION_TOL};

/// Operators whose largest entry is below this are dropped by the builtin
/// constructors.
const ZERO_OPERATOR_TOL: f64 = 1e-15;

/// A map `ρ ↦ Σᵢ Ωᵢ ρ Ωᵢ†` given by an ordered list of Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    dim: usize,
    operators: Vec<ComplexMatrix>,
    label: String,
}

/// Outcome of [`KrausChannel::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Frobenius norm of `Σ Ω†Ω − I`.
    pub deviation: f64,
    pub passed: bool,
}

impl KrausChannel {
    /// Checks only shapes: at least one operator, all of one dimension.
    /// Completeness is reported by [`KrausChannel::validate`] and enforced by
    /// the operations that need a trace-preserving map.
    pub fn new(operators: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::Parameter("a channel needs at least one operator".into()))?;
        let dim = first.dim();
        if let Some(bad) = operators.iter().find(|o| o.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self {
            dim,
            operators,
            label: label.into(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            operators: vec![ComplexMatrix::identity(dim)],
            label: "identity".into(),
        }
    }

    /// Single-operator channel `ρ ↦ U ρ U†`.
    pub fn unitary(u: ComplexMatrix, label: impl Into<String>) -> Result<Self> {
        if !u.is_unitary(RECONSTRUCTION_TOL) {
            return Err(Error::Parameter("operator is not unitary".into()));
        }
        Self::new(vec![u], label)
    }

    fn without_zero_operators(operators: Vec<ComplexMatrix>, label: &str) -> Result<Self> {
        let kept: Vec<ComplexMatrix> = operators
            .into_iter()
            .filter(|o| !o.is_zero(ZERO_OPERATOR_TOL))
            .collect();
        Self::new(kept, label)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Kraus rank as listed (number of operators).
    pub fn rank(&self) -> usize {
        self.operators.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `Σ Ω†Ω`.
    pub fn completeness_sum(&self) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(self.dim), |acc, o| {
                &acc + &(&o.adjoint() * o)
            })
    }

    pub fn validate(&self) -> ValidationReport {
        let deviation =
            (&self.completeness_sum() - &ComplexMatrix::identity(self.dim)).frobenius_norm();
        ValidationReport {
            deviation,
            passed: deviation <= RECONSTRUCTION_TOL,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.passed {
            Ok(())
        } else {
            Err(Error::IncompleteChannel {
                label: self.label.clone(),
                deviation: report.deviation,
            })
        }
    }

    /// `Σ Ω m Ω†` on a raw matrix, without any validity checks.
    pub fn act(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(self.dim), |acc, o| {
                &acc + &(&(o * m) * &o.adjoint())
            })
    }
}

impl fmt::Display for KrausChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, {} operators)",
            self.label,
            self.dim,
            self.rank()
        )
    }
}

/// Applies a complete channel to a state.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: ch.dim(),
            found: rho.dim(),
        });
    }
    ch.ensure_valid()?;
    DensityMatrix::from_parts_unchecked(ch.act(rho.matrix()), rho.layout().clone())
}

/// Damping strength `γ` together with the rotation angle `θ`, `γ = sin(θ/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    gamma: f64,
    theta: f64,
}

impl ChannelParams {
    pub fn from_gamma(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::Parameter(format!("gamma {gamma} outside [0, 1]")));
        }
        Ok(Self {
            gamma,
            theta: 2.0 * gamma.asin(),
        })
    }

    pub fn from_theta(theta: f64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(Error::Parameter(format!("theta {theta} outside [0, 2π)")));
        }
        Ok(Self {
            gamma: (theta / 2.0).sin(),
            theta,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `cos(θ/2)`: `√(1−γ²)` for `θ ≤ π`, negative beyond.
    pub fn cos_half_theta(&self) -> f64 {
        if self.theta <= PI {
            (1.0 - self.gamma * self.gamma).sqrt()
        } else {
            (self.theta / 2.0).cos()
        }
    }
}

/// `Ω₀ = |0⟩⟨0| + √(1−γ²)|1⟩⟨1|`, `Ω₁ = γ|0⟩⟨1|`.
///
/// For `θ ∈ (π, 2π)` the `|1⟩⟨1|` entry of `Ω₀` is `cos(θ/2) < 0`, which is
/// the operator the rotation circuit realises at that angle.
pub fn amplitude_damping(p: &ChannelParams) -> Result<KrausChannel> {
    let g = p.gamma();
    let om0 = ComplexMatrix::from_real(2, &[1.0, 0.0, 0.0, p.cos_half_theta()])?;
    let om1 = ComplexMatrix::from_real(2, &[0.0, g, 0.0, 0.0])?;
    KrausChannel::without_zero_operators(vec![om0, om1], "amplitude-damping")
}

/// `Ω₀ = √(1−γ²) I`, `Ω₁ = γ Z`.
pub fn dephasing(p: &ChannelParams) -> Result<KrausChannel> {
    let g = p.gamma();
    let om0 = ComplexMatrix::identity(2).scale_real((1.0 - g * g).sqrt());
    let om1 = Pauli::Z.matrix().scale_real(g);
    KrausChannel::without_zero_operators(vec![om0, om1], "dephasing")
}

/// `{√(1−px−py−pz) I, √px X, √py Y, √pz Z}` with zero-weight terms dropped.
pub fn pauli_channel(px: f64, py: f64, pz: f64) -> Result<KrausChannel> {
    for (name, p) in [("px", px), ("py", py), ("pz", pz)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameter(format!("{name} = {p} outside [0, 1]")));
        }
    }
    let total = px + py + pz;
    if total > 1.0 + 1e-12 {
        return Err(Error::Parameter(format!(
            "probabilities sum to {total} > 1"
        )));
    }
    let p0 = (1.0 - total).max(0.0);
    pauli_mixture(&[
        (Pauli::I, p0),
        (Pauli::X, px),
        (Pauli::Y, py),
        (Pauli::Z, pz),
    ])
    .map(|ch| ch.with_label("pauli"))
}

/// `{√wᵢ Pᵢ}` for an arbitrary list of weighted Paulis (repeats allowed).
/// Zero weights are dropped; weights must sum to one.
pub fn pauli_mixture(terms: &[(Pauli, f64)]) -> Result<KrausChannel> {
    if let Some((p, w)) = terms.iter().find(|(_, w)| *w < 0.0) {
        return Err(Error::Parameter(format!("negative weight {w} for {p:?}")));
    }
    let ops = terms
        .iter()
        .filter(|(_, w)| *w > 0.0)
        .map(|(p, w)| p.matrix().scale_real(w.sqrt()))
        .collect();
    let ch = KrausChannel::new(ops, "pauli-mixture")?;
    ch.ensure_valid()?;
    Ok(ch)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> ComplexMatrix {
        let z = re(0.0);
        let o = re(1.0);
        let entries = match self {
            Pauli::I => [o, z, z, o],
            Pauli::X => [z, o, o, z],
            Pauli::Y => [z, c(0.0, -1.0), c(0.0, 1.0), z],
            Pauli::Z => [o, z, z, re(-1.0)],
        };
        ComplexMatrix::from_row_major(2, &entries).expect("2x2")
    }

    /// If `m = w · e^{iφ} P` for a Pauli `P`, returns `(P, |w|)`.
    pub fn decompose_scaled(m: &ComplexMatrix, tol: f64) -> Option<(Pauli, f64)> {
        if m.dim() != 2 {
            return None;
        }
        for p in Self::ALL {
            // Paulis are Hermitian and orthogonal under tr(A†B)/2
            let coeff = (&p.matrix() * m).trace() * 0.5;
            let approx = p.matrix().scale(coeff);
            if approx.approx_eq(m, tol) {
                return Some((p, coeff.norm()));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::Layout;

    fn q() -> Layout {
        Layout::qubits(&["q"]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let id = KrausChannel::identity(2).validate();
        assert!(id.passed && id.deviation == 0.0);
        let ad = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        assert!(ad.validate().passed);
        let half = KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(0.5)], "half")
            .unwrap()
            .validate();
        assert!(!half.passed);
        // ‖0.25 I − I‖_F = 0.75 √2
        assert!((half.deviation - 0.75 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn params_are_linked() {
        let p = ChannelParams::from_theta(PI / 10.0).unwrap();
        assert!((p.gamma() - (PI / 20.0).sin()).abs() < 1e-15);
        let p2 = ChannelParams::from_gamma(p.gamma()).unwrap();
        assert!((p2.theta() - PI / 10.0).abs() < 1e-12);
        assert!(ChannelParams::from_gamma(1.2).is_err());
        assert!(ChannelParams::from_gamma(-0.1).is_err());
        assert!(ChannelParams::from_theta(2.0 * PI).is_err());
    }

    #[test]
    fn amplitude_damping_examples() {
        let zero = amplitude_damping(&ChannelParams::from_gamma(0.0).unwrap()).unwrap();
        assert_eq!(zero.rank(), 1);
        let mut rng = crate::random::seeded(1);
        let rho = crate::random::random_density_matrix(&mut rng, q());
        assert!(apply_channel(&zero, &rho)
            .unwrap()
            .matrix()
            .approx_eq(rho.matrix(), 1e-15));

        let full = amplitude_damping(&ChannelParams::from_gamma(1.0).unwrap()).unwrap();
        let out = apply_channel(&full, &DensityMatrix::basis(1, q()).unwrap()).unwrap();
        assert!(out
            .matrix()
            .approx_eq(DensityMatrix::basis(0, q()).unwrap().matrix(), 1e-15));

        let g = (PI / 20.0).sin();
        let ch = amplitude_damping(&ChannelParams::from_gamma(g).unwrap()).unwrap();
        let out = apply_channel(&ch, &DensityMatrix::basis(1, q()).unwrap()).unwrap();
        assert!((out.matrix().get(1, 1).re - 0.975_528_258_147_576_8).abs() < 1e-12);
        let twice = apply_channel(&ch, &out).unwrap();
        assert!((twice.matrix().get(1, 1).re - (1.0 - g * g).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn dephasing_examples() {
        let id = dephasing(&ChannelParams::from_gamma(0.0).unwrap()).unwrap();
        assert_eq!(id.rank(), 1);
        assert!(id.operators()[0].approx_eq(&ComplexMatrix::identity(2), 0.0));

        let g = (PI / 10.0).sin();
        let ch = dephasing(&ChannelParams::from_gamma(g).unwrap()).unwrap();
        let plus = DensityMatrix::pure(&[re(1.0), re(1.0)], q()).unwrap();
        let out = apply_channel(&ch, &plus).unwrap();
        let p_plus = out.expectation(plus.matrix()).unwrap();
        assert!((p_plus - 0.904_508_497_187_473_7).abs() < 1e-12);
        // diagonal entries untouched
        assert!((out.matrix().get(0, 0) - plus.matrix().get(0, 0)).norm() < 1e-15);
        assert!((out.matrix().get(1, 1) - plus.matrix().get(1, 1)).norm() < 1e-15);

        let diag =
            DensityMatrix::new(ComplexMatrix::from_diagonal(&[re(0.3), re(0.7)]), q()).unwrap();
        assert!(apply_channel(&ch, &diag)
            .unwrap()
            .matrix()
            .approx_eq(diag.matrix(), 1e-15));
    }

    #[test]
    fn pauli_channel_examples() {
        assert_eq!(pauli_channel(0.0, 0.0, 0.0).unwrap().rank(), 1);
        assert_eq!(pauli_channel(0.1, 0.2, 0.3).unwrap().rank(), 4);
        assert!(pauli_channel(-0.1, 0.0, 0.0).is_err());
        assert!(pauli_channel(0.5, 0.5, 0.5).is_err());

        let dep = pauli_channel(0.25, 0.25, 0.25).unwrap();
        let mut rng = crate::random::seeded(3);
        for rho in crate::random::random_qubit_states(&mut rng, 5) {
            let out = apply_channel(&dep, &rho).unwrap();
            assert!(out
                .matrix()
                .approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), 1e-12));
        }
    }

    #[test]
    fn apply_rejects_mismatch_and_incomplete() {
        let rho = DensityMatrix::maximally_mixed(Layout::qubits(&["a", "b"]).unwrap()).unwrap();
        assert!(matches!(
            apply_channel(&KrausChannel::identity(2), &rho),
            Err(Error::DimensionMismatch { .. })
        ));
        let bad =
            KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(0.5)], "bad").unwrap();
        let q1 = DensityMatrix::maximally_mixed(q()).unwrap();
        assert!(matches!(
            apply_channel(&bad, &q1),
            Err(Error::IncompleteChannel { .. })
        ));
    }

    #[test]
    fn scaled_pauli_detection() {
        let m = Pauli::Y.matrix().scale(c(0.0, 0.5));
        assert_eq!(Pauli::decompose_scaled(&m, 1e-12), Some((Pauli::Y, 0.5)));
        let ad = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        assert_eq!(Pauli::decompose_scaled(&ad.operators()[1], 1e-12), None);
    }
}
