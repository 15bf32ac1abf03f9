//! Markovian amplitude damping: the circuit trajectory against the closed form.

use std::f64::consts::PI;

use openqc::analysis::{monotonicity_check, DEFAULT_MONOTONE_TOL};
use openqc::circuit::{build_markovian_step, write_circuit, ChannelKind};
use openqc::engine::{run, Observable};
use openqc::qmath::{DensityMatrix, Layout};

fn main() -> openqc::Result<()> {
    let theta = PI / 10.0;
    let step = build_markovian_step(ChannelKind::AmplitudeDamping, theta)?;
    print!("{}", write_circuit(&step));

    let rho0 = DensityMatrix::basis(1, Layout::qubits(&["q"])?)?;
    let traj = run(&step, &rho0, 50, &[Observable::qubit("1")?])?;
    let decay = 1.0 - (theta / 2.0).sin().powi(2);

    println!("{:>4} {:>10} {:>10}", "n", "p1", "closed");
    for r in traj.records.iter().step_by(10) {
        println!(
            "{:>4} {:>10.6} {:>10.6}",
            r.step,
            r.values[0].1,
            decay.powi(r.step as i32)
        );
    }
    let verdict = monotonicity_check(&traj, "p1", DEFAULT_MONOTONE_TOL)?;
    println!("monotone: {}", verdict.monotone);
    Ok(())
}
