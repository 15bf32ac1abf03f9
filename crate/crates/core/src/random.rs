//! Seeded random states and matrices for tests, sweeps and examples.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use crate::qmath::{c, ComplexMatrix, DensityMatrix, Layout, C64};

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn gaussian<R: Rng>(rng: &mut R) -> C64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix with standard normal entries.
pub fn ginibre<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let entries: Vec<C64> = (0..dim * dim).map(|_| gaussian(rng)).collect();
    ComplexMatrix::from_row_major(dim, &entries).expect("square by construction")
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ginibre(rng, dim).hermitian_part()
}

/// `G G†` for a Ginibre `G`; full rank almost surely.
pub fn random_psd<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    (&g * &g.adjoint()).hermitian_part()
}

/// Mixed state drawn from the Hilbert–Schmidt ensemble.
pub fn random_density_matrix<R: Rng>(rng: &mut R, layout: Layout) -> DensityMatrix {
    let p = random_psd(rng, layout.dim());
    let tr = p.trace().re;
    DensityMatrix::new(p.scale_real(1.0 / tr), layout).expect("normalised PSD matrix")
}

/// Haar-like random pure state (normalised Gaussian vector).
pub fn random_pure_state<R: Rng>(rng: &mut R, layout: Layout) -> DensityMatrix {
    let v: Vec<C64> = (0..layout.dim()).map(|_| gaussian(rng)).collect();
    DensityMatrix::pure(&v, layout).expect("non-zero vector")
}

/// Random qubit state on wire `q`, alternating between mixed and pure draws.
pub fn random_qubit_states<R: Rng>(rng: &mut R, count: usize) -> Vec<DensityMatrix> {
    let layout = Layout::qubits(&["q"]).expect("valid label");
    (0..count)
        .map(|i| {
            if i % 2 == 0 {
                random_density_matrix(rng, layout.clone())
            } else {
                random_pure_state(rng, layout.clone())
            }
        })
        .collect()
}
