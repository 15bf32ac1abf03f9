use crate::channels::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::qmath::{re, tensor_product, ComplexMatrix};

/// Condition-number ceiling for inverting a superoperator.
pub const MAX_CONDITION: f64 = 1e12;

/// Matrix of a linear map on `n × n` matrices acting on column-stacked
/// vectorizations: `vec(Φ(ρ)) = S · vec(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator {
    n: usize,
    matrix: ComplexMatrix,
}

impl Superoperator {
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let n = (matrix.dim() as f64).sqrt().round() as usize;
        if n * n != matrix.dim() {
            return Err(Error::Shape(format!(
                "superoperator dimension {} is not a perfect square",
                matrix.dim()
            )));
        }
        Ok(Self { n, matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: ComplexMatrix::identity(n * n),
        }
    }

    /// The (non-CP) transpose map `ρ ↦ ρᵀ`.
    pub fn transpose_map(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n * n);
        for a in 0..n {
            for b in 0..n {
                m.set(b * n + a, a * n + b, re(1.0));
            }
        }
        Self { n, matrix: m }
    }

    /// Dimension of the underlying system.
    pub fn system_dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rho.dim(),
            });
        }
        ComplexMatrix::unvectorize(&self.matrix.apply(&rho.vectorize()))
    }

    /// Choi matrix `Σᵢⱼ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|)` (unnormalised).
    pub fn choi(&self) -> ComplexMatrix {
        let n = self.n;
        let mut c = ComplexMatrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        c.set(i * n + a, j * n + b, self.matrix.get(b * n + a, j * n + i));
                    }
                }
            }
        }
        c
    }

    pub fn condition_number(&self) -> f64 {
        let s = self.matrix.singular_values();
        let min = *s.last().expect("non-empty");
        if min == 0.0 {
            f64::INFINITY
        } else {
            s[0] / min
        }
    }
}

/// `Σᵢ conj(Ωᵢ) ⊗ Ωᵢ`.
pub fn to_superoperator(ch: &KrausChannel) -> Result<Superoperator> {
    ch.ensure_valid()?;
    let n = ch.dim();
    let matrix = ch
        .operators()
        .iter()
        .fold(ComplexMatrix::zeros(n * n), |acc, o| {
            &acc + &tensor_product(&o.conj(), o)
        });
    Ok(Superoperator { n, matrix })
}

/// `second ∘ first`.
pub fn compose(second: &Superoperator, first: &Superoperator) -> Result<Superoperator> {
    if second.n != first.n {
        return Err(Error::DimensionMismatch {
            expected: second.n,
            found: first.n,
        });
    }
    Ok(Superoperator {
        n: first.n,
        matrix: &second.matrix * &first.matrix,
    })
}

/// `Φ_t · Φ_s⁻¹`.
pub fn intermediate_map(phi_t: &Superoperator, phi_s: &Superoperator) -> Result<Superoperator> {
    if phi_t.n != phi_s.n {
        return Err(Error::DimensionMismatch {
            expected: phi_t.n,
            found: phi_s.n,
        });
    }
    let condition = phi_s.condition_number();
    // NaN (singular input) must fail too.
    if condition.is_nan() || condition > MAX_CONDITION {
        return Err(Error::NotInvertible { condition });
    }
    let inv = phi_s
        .matrix
        .try_inverse()
        .ok_or(Error::NotInvertible { condition })?;
    Ok(Superoperator {
        n: phi_t.n,
        matrix: &phi_t.matrix * &inv,
    })
}

/// Minimum eigenvalue of the Choi matrix; non-negative (up to 1e-9) iff the
/// map is completely positive.
pub fn cp_witness(phi: &Superoperator) -> f64 {
    phi.choi().min_eigenvalue()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::kraus::{amplitude_damping, apply_channel, dephasing, ChannelParams};
    use crate::qmath::{DensityMatrix, Layout};
    use std::f64::consts::PI;

    #[test]
    fn identity_channel_superoperator() {
        let s = to_superoperator(&KrausChannel::identity(2)).unwrap();
        assert!(s.matrix().approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn dephasing_superoperator_is_diagonal() {
        let g = 0.4;
        let s =
            to_superoperator(&dephasing(&ChannelParams::from_gamma(g).unwrap()).unwrap()).unwrap();
        let f = 1.0 - 2.0 * g * g;
        let expect = ComplexMatrix::from_diagonal(&[re(1.0), re(f), re(f), re(1.0)]);
        assert!(s.matrix().approx_eq(&expect, 1e-15));
    }

    #[test]
    fn superoperator_matches_channel_on_random_states() {
        let ch = amplitude_damping(&ChannelParams::from_gamma(0.37).unwrap()).unwrap();
        let s = to_superoperator(&ch).unwrap();
        let mut rng = crate::random::seeded(11);
        for rho in crate::random::random_qubit_states(&mut rng, 50) {
            let a = s.apply(rho.matrix()).unwrap();
            let b = apply_channel(&ch, &rho).unwrap();
            assert!(a.approx_eq(b.matrix(), 1e-10));
        }
    }

    #[test]
    fn compose_examples() {
        let ad = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        let s = to_superoperator(&ad).unwrap();
        let id = Superoperator::identity(2);
        assert_eq!(compose(&s, &id).unwrap(), s);

        let twice = compose(&s, &s).unwrap();
        let mut rng = crate::random::seeded(5);
        for rho in crate::random::random_qubit_states(&mut rng, 20) {
            let seq = apply_channel(&ad, &apply_channel(&ad, &rho).unwrap()).unwrap();
            assert!(twice
                .apply(rho.matrix())
                .unwrap()
                .approx_eq(seq.matrix(), 1e-10));
        }

        let a = to_superoperator(&dephasing(&ChannelParams::from_gamma(0.2).unwrap()).unwrap())
            .unwrap();
        let b = to_superoperator(&dephasing(&ChannelParams::from_gamma(0.6).unwrap()).unwrap())
            .unwrap();
        assert!(compose(&a, &b)
            .unwrap()
            .matrix()
            .approx_eq(compose(&b, &a).unwrap().matrix(), 1e-12));
        assert!(compose(&a, &Superoperator::identity(3)).is_err());
    }

    #[test]
    fn intermediate_map_examples() {
        let s =
            to_superoperator(&amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap())
                .unwrap();
        let i = intermediate_map(&s, &s).unwrap();
        assert!(i.matrix().approx_eq(&ComplexMatrix::identity(4), 1e-12));

        let step =
            to_superoperator(&dephasing(&ChannelParams::from_theta(PI / 5.0).unwrap()).unwrap())
                .unwrap();
        let mut phi_prev = Superoperator::identity(2);
        for _ in 0..6 {
            let phi_next = compose(&step, &phi_prev).unwrap();
            let inter = intermediate_map(&phi_next, &phi_prev).unwrap();
            assert!(inter.matrix().approx_eq(step.matrix(), 1e-9));
            phi_prev = phi_next;
        }

        let full = to_superoperator(
            &dephasing(&ChannelParams::from_gamma(0.5f64.sqrt()).unwrap()).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            intermediate_map(&s, &full),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn cp_witness_examples() {
        let id = cp_witness(&Superoperator::identity(2));
        assert!(id.abs() < 1e-12);
        // Choi of the identity map is n |Φ⁺⟩⟨Φ⁺|: spectrum {2, 0, 0, 0}
        let choi = Superoperator::identity(2).choi();
        let vals = choi.eigenvalues_hermitian();
        assert!((vals[3] - 2.0).abs() < 1e-12);

        // Choi of the transpose map is SWAP: spectrum {-1, 1, 1, 1}
        let t = cp_witness(&Superoperator::transpose_map(2));
        assert!((t + 1.0).abs() < 1e-12);

        let ad =
            to_superoperator(&amplitude_damping(&ChannelParams::from_gamma(0.8).unwrap()).unwrap())
                .unwrap();
        assert!(cp_witness(&ad) >= -1e-9);
    }

    #[test]
    fn transpose_map_transposes() {
        let m = DensityMatrix::pure(
            &[re(0.6), crate::qmath::c(0.0, 0.8)],
            Layout::qubits(&["q"]).unwrap(),
        )
        .unwrap();
        let t = Superoperator::transpose_map(2).apply(m.matrix()).unwrap();
        assert!(t.approx_eq(&m.matrix().transpose(), 0.0));
    }
}
