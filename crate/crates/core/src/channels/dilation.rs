use crate::channels::kraus::KrausChannel;
use crate::error::Result;
use crate::qmath::{re, ComplexMatrix, C64};

/// Residual norm below which a Gram–Schmidt candidate is considered dependent.
const DEPENDENCE_TOL: f64 = 1e-8;

/// Environment dimension used for a channel with `rank` operators: the
/// smallest power of two `≥ rank`, and at least one qubit.
pub fn dilation_env_dim(rank: usize) -> usize {
    rank.next_power_of_two().max(2)
}

/// Unitary `U` on system ⊗ environment whose `|0⟩_E` input block is the
/// isometry `Σᵢ Ωᵢ ⊗ |i⟩⟨0|_E`.
///
/// The remaining columns are completed by Gram–Schmidt against the canonical
/// basis vectors taken in index order, so the result is fully determined by
/// the Kraus operators. The system is the more significant tensor factor.
pub fn stinespring_dilate(ch: &KrausChannel) -> Result<ComplexMatrix> {
    ch.ensure_valid()?;
    let n = ch.dim();
    let env = dilation_env_dim(ch.rank());
    let total = n * env;

    let mut columns: Vec<Option<Vec<C64>>> = vec![None; total];
    for s in 0..n {
        let mut col = vec![re(0.0); total];
        for (i, om) in ch.operators().iter().enumerate() {
            for r in 0..n {
                col[r * env + i] = om.get(r, s);
            }
        }
        columns[s * env] = Some(col);
    }

    let mut basis: Vec<Vec<C64>> = columns.iter().flatten().cloned().collect();
    let mut candidate = 0;
    for slot in columns.iter_mut().filter(|c| c.is_none()) {
        loop {
            assert!(
                candidate < total,
                "canonical basis exhausted during completion"
            );
            let mut v = vec![re(0.0); total];
            v[candidate] = re(1.0);
            candidate += 1;
            // two passes of modified Gram–Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let proj: C64 = b.iter().zip(&v).map(|(bi, vi)| bi.conj() * vi).sum();
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= proj * bi;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > DEPENDENCE_TOL {
                for vi in &mut v {
                    *vi /= norm;
                }
                basis.push(v.clone());
                *slot = Some(v);
                break;
            }
        }
    }

    let mut u = ComplexMatrix::zeros(total);
    for (j, col) in columns.into_iter().enumerate() {
        let col = col.expect("every column filled");
        for (i, z) in col.into_iter().enumerate() {
            u.set(i, j, z);
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::kraus::{amplitude_damping, apply_channel, ChannelParams};
    use crate::qmath::{partial_trace, tensor_product, DensityMatrix, Layout, RECONSTRUCTION_TOL};

    fn env_zero(env: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(env);
        m.set(0, 0, re(1.0));
        m
    }

    #[test]
    fn identity_dilates_to_identity() {
        let u = stinespring_dilate(&KrausChannel::identity(2)).unwrap();
        assert!(u.approx_eq(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn env_dim_rounding() {
        assert_eq!(dilation_env_dim(1), 2);
        assert_eq!(dilation_env_dim(2), 2);
        assert_eq!(dilation_env_dim(3), 4);
        assert_eq!(dilation_env_dim(5), 8);
    }

    #[test]
    fn amplitude_damping_dilation_reproduces_decay() {
        let ch = amplitude_damping(&ChannelParams::from_gamma(0.3).unwrap()).unwrap();
        let u = stinespring_dilate(&ch).unwrap();
        assert!(u.is_unitary(1e-12));
        let one = DensityMatrix::basis(1, Layout::qubits(&["q"]).unwrap()).unwrap();
        let joint = tensor_product(one.matrix(), &env_zero(2));
        let out = &(&u * &joint) * &u.adjoint();
        let rho =
            DensityMatrix::from_parts_unchecked(out, Layout::qubits(&["q", "e"]).unwrap()).unwrap();
        let red = partial_trace(&rho, "e").unwrap();
        assert!((red.matrix().get(1, 1).re - 0.91).abs() < 1e-12);
        assert!(red
            .matrix()
            .approx_eq(apply_channel(&ch, &one).unwrap().matrix(), 1e-12));
    }

    #[test]
    fn isometry_block_is_preserved() {
        let ch = crate::channels::kraus::pauli_channel(0.1, 0.2, 0.3).unwrap();
        let u = stinespring_dilate(&ch).unwrap();
        let env = dilation_env_dim(ch.rank());
        let p0 = tensor_product(&ComplexMatrix::identity(2), &env_zero(env));
        // U† U restricted to the |0⟩_E block
        let restricted = &(&p0 * &(&u.adjoint() * &u)) * &p0;
        assert!(restricted.approx_eq(&p0, RECONSTRUCTION_TOL));
        assert!(u.is_unitary(1e-10));
    }
}
