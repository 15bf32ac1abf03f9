//! Memory qubits feed population back into the system: revivals and a
//! positive trace-distance witness.

use std::f64::consts::PI;

use openqc::analysis::{blp_witness, monotonicity_check, DEFAULT_MONOTONE_TOL};
use openqc::circuit::{build_markovian_step, build_nonmarkovian_step, ChannelKind, MemorySpec};
use openqc::engine::{run, Observable};
use openqc::qmath::{DensityMatrix, Layout};

fn main() -> openqc::Result<()> {
    let q = Layout::qubits(&["q"])?;
    let zero = DensityMatrix::basis(0, q.clone())?;
    let one = DensityMatrix::basis(1, q)?;
    let obs = [Observable::qubit("1")?];

    let markovian = build_markovian_step(ChannelKind::AmplitudeDamping, PI / 10.0)?;
    let memory = MemorySpec::new(vec![PI / 10.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0])?;
    let non_markovian = build_nonmarkovian_step(ChannelKind::AmplitudeDamping, &memory)?;

    for (name, step) in [("markovian", &markovian), ("non-markovian", &non_markovian)] {
        let traj = run(step, &one, 50, &obs)?;
        let v = monotonicity_check(&traj, "p1", DEFAULT_MONOTONE_TOL)?;
        let blp = blp_witness(step, &zero, &one, 50)?;
        println!(
            "{name:>14}: p1(50) = {:.4}, monotone = {}, largest revival = {:.4}, BLP = {:.4}",
            traj.series("p1")?[50],
            v.monotone,
            v.max_revival,
            blp
        );
    }
    Ok(())
}
