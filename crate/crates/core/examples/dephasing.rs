//! Dephasing with and without memory: coherence decays to 1/2 either way,
//! but the memory run oscillates on the way.

use std::f64::consts::PI;

use openqc::analysis::monotonicity_of;
use openqc::circuit::{build_markovian_step, build_nonmarkovian_step, ChannelKind, MemorySpec};
use openqc::engine::{run, Observable};
use openqc::qmath::{re, DensityMatrix, Layout};

fn main() -> openqc::Result<()> {
    let plus = DensityMatrix::pure(&[re(1.0), re(1.0)], Layout::qubits(&["q"])?)?;
    let obs = [Observable::qubit("+")?];
    let m = build_markovian_step(ChannelKind::Dephasing, PI / 5.0)?;
    let mem = MemorySpec::new(vec![PI / 5.0, PI / 4.0, PI / 2.0])?;
    let nm = build_nonmarkovian_step(ChannelKind::Dephasing, &mem)?;

    let a = run(&m, &plus, 100, &obs)?.series("p+")?;
    let b = run(&nm, &plus, 100, &obs)?.series("p+")?;
    println!("{:>4} {:>10} {:>14}", "n", "markovian", "non-markovian");
    for n in (0..=100).step_by(10) {
        println!("{n:>4} {:>10.4} {:>14.4}", a[n], b[n]);
    }
    println!(
        "monotone: markovian {}, non-markovian {}",
        monotonicity_of(&a, 1e-9).monotone,
        monotonicity_of(&b, 1e-9).monotone
    );
    Ok(())
}
