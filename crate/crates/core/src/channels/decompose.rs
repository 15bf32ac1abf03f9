//! Sequential decomposition of a Kraus channel into two-operator factors
//! `Φⁱ(ρ) = Ωᵢ ρ Ωᵢ† + Ωᵢ′ ρ Ωᵢ′†`, applied in operator-list order.

use crate::channels::kraus::KrausChannel;
use crate::error::{Error, Result};
use crate::qmath::{psd_sqrt, ComplexMatrix};

/// How the complementary operator `Ωᵢ′` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FactorMode {
    /// `Ωᵢ′ = √(I − Ωᵢ†Ωᵢ)`; every factor is exactly trace preserving.
    #[default]
    Exact,
    /// `Ωᵢ′ = I − ½ Ωᵢ†Ωᵢ`; trace preserving to first order only.
    FirstOrder,
}

pub fn sequential_factors(ch: &KrausChannel, mode: FactorMode) -> Result<Vec<KrausChannel>> {
    ch.ensure_valid()?;
    let n = ch.dim();
    let id = ComplexMatrix::identity(n);
    ch.operators()
        .iter()
        .enumerate()
        .map(|(i, om)| {
            let gram = &om.adjoint() * om;
            let rest = &id - &gram;
            let complement = psd_sqrt(&rest).map_err(|e| {
                Error::Decomposition(format!("operator {i}: I - Ω†Ω is not PSD ({e})"))
            })?;
            let complement = match mode {
                FactorMode::Exact => complement,
                FactorMode::FirstOrder => &id - &gram.scale_real(0.5),
            };
            KrausChannel::new(
                vec![om.clone(), complement],
                format!("{}/factor-{}", ch.label(), i + 1),
            )
        })
        .collect()
}

/// `Φˡ ∘ … ∘ Φ¹` applied to a raw matrix (no completeness checks, so
/// first-order factors are accepted).
pub fn apply_factors(factors: &[KrausChannel], m: &ComplexMatrix) -> ComplexMatrix {
    factors.iter().fold(m.clone(), |acc, f| f.act(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::kraus::{
        amplitude_damping, apply_channel, pauli_channel, ChannelParams, Pauli,
    };
    use crate::qmath::{trace_distance, DensityMatrix, Layout};

    fn max_distance(ch: &KrausChannel, factors: &[KrausChannel], seed: u64) -> f64 {
        let mut rng = crate::random::seeded(seed);
        crate::random::random_qubit_states(&mut rng, 20)
            .iter()
            .map(|rho| {
                let direct = apply_channel(ch, rho).unwrap();
                let seq = DensityMatrix::from_parts_unchecked(
                    apply_factors(factors, rho.matrix()),
                    rho.layout().clone(),
                )
                .unwrap();
                trace_distance(&direct, &seq).unwrap()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn unitary_channel_has_single_exact_factor() {
        let u = crate::circuit::gates::standard_gate("H", None).unwrap();
        let ch = KrausChannel::unitary(u.clone(), "hadamard").unwrap();
        let f = sequential_factors(&ch, FactorMode::Exact).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].operators()[1].is_zero(1e-12));
        let rho = DensityMatrix::basis(0, Layout::qubits(&["q"]).unwrap()).unwrap();
        let out = apply_channel(&f[0], &rho).unwrap();
        assert!(out
            .matrix()
            .approx_eq(apply_channel(&ch, &rho).unwrap().matrix(), 1e-12));
    }

    #[test]
    fn exact_factors_are_complete() {
        let ch = pauli_channel(0.1, 0.05, 0.2).unwrap();
        for f in sequential_factors(&ch, FactorMode::Exact).unwrap() {
            assert!(f.validate().passed, "{f}");
        }
        let ad = amplitude_damping(&ChannelParams::from_gamma(0.6).unwrap()).unwrap();
        for f in sequential_factors(&ad, FactorMode::Exact).unwrap() {
            assert!(f.validate().passed, "{f}");
        }
    }

    #[test]
    fn pauli_complements_are_scaled_identity() {
        let eps = 0.03;
        let ch = pauli_channel(eps, eps, eps).unwrap();
        let factors = sequential_factors(&ch, FactorMode::Exact).unwrap();
        for f in &factors[1..] {
            let expect = ComplexMatrix::identity(2).scale_real((1.0 - eps).sqrt());
            assert!(f.operators()[1].approx_eq(&expect, 1e-12));
        }
    }

    #[test]
    fn first_order_factors_deviate_at_second_order() {
        let small = pauli_channel(0.01, 0.01, 0.01).unwrap();
        let f = sequential_factors(&small, FactorMode::FirstOrder).unwrap();
        // (I - ½ε I)² + ε I = (1 + ε²/4) I for each Pauli factor
        let dev = f[1].validate().deviation;
        assert!((dev - 2f64.sqrt() * 0.01f64.powi(2) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_sequential_error_is_second_order() {
        let errs: Vec<f64> = [0.04, 0.02, 0.01]
            .iter()
            .map(|&e| {
                let ch = pauli_channel(e, e, e).unwrap();
                let f = sequential_factors(&ch, FactorMode::Exact).unwrap();
                max_distance(&ch, &f, 17)
            })
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn amplitude_damping_factors_stay_close() {
        let ch = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        let f = sequential_factors(&ch, FactorMode::Exact).unwrap();
        assert!(max_distance(&ch, &f, 23) <= 0.05);
    }

    #[test]
    fn oversized_operator_is_rejected() {
        // singular value 1.5: I - Ω†Ω is negative definite
        let big = KrausChannel::new(vec![Pauli::X.matrix().scale_real(1.5)], "big").unwrap();
        assert!(matches!(
            sequential_factors(&big, FactorMode::Exact),
            Err(Error::IncompleteChannel { .. })
        ));
    }
}
