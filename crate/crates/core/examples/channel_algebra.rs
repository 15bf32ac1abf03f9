//! Kraus channels as dilations and superoperators; divisibility and the CP
//! witness.

use openqc::channels::{
    amplitude_damping, compose, cp_witness, dephasing, intermediate_map, stinespring_dilate,
    to_superoperator, ChannelParams, Superoperator,
};

fn main() -> openqc::Result<()> {
    let damp = amplitude_damping(&ChannelParams::from_gamma(0.3)?)?;
    let u = stinespring_dilate(&damp)?;
    println!(
        "amplitude damping (gamma 0.3): rank {}, dilation {}x{} unitary = {}",
        damp.rank(),
        u.dim(),
        u.dim(),
        u.is_unitary(1e-10)
    );

    let phi = to_superoperator(&damp)?;
    println!("CP witness (min Choi eigenvalue): {:.4}", cp_witness(&phi));
    println!(
        "transpose map witness: {:.4}",
        cp_witness(&Superoperator::transpose_map(2))
    );

    // Φ₂ = Φ∘Φ, and Φ₂ Φ₁⁻¹ recovers Φ: the semigroup is divisible.
    let phi2 = compose(&phi, &phi)?;
    let step = intermediate_map(&phi2, &phi)?;
    let gap = (step.matrix() - phi.matrix()).max_abs();
    println!("intermediate map deviation from one step: {gap:.2e}");

    let full = to_superoperator(&dephasing(&ChannelParams::from_gamma(
        std::f64::consts::FRAC_1_SQRT_2,
    )?)?)?;
    match intermediate_map(&phi2, &full) {
        Ok(_) => println!("full dephasing unexpectedly invertible"),
        Err(e) => println!("full dephasing: {e}"),
    }
    Ok(())
}
