//! A channel from a TOML Kraus file, validated and simulated sequentially.

use openqc::channels::{parse_channel_spec, write_channel_spec};
use openqc::circuit::build_sequential_step;
use openqc::engine::{run, Observable};
use openqc::qmath::{DensityMatrix, Layout};

const BIT_FLIP: &str = r#"
dim = 2
label = "bit-flip"
operators = [
  [[0.9486832980505138, 0], [0, 0], [0, 0], [0.9486832980505138, 0]],
  [[0, 0], [0.31622776601683794, 0], [0.31622776601683794, 0], [0, 0]],
]
"#;

fn main() -> openqc::Result<()> {
    let ch = parse_channel_spec(BIT_FLIP)?;
    println!(
        "{}: rank {}, completeness deviation {:.1e}",
        ch.label(),
        ch.rank(),
        ch.validate().deviation
    );
    print!("{}", write_channel_spec(&ch));

    let step = build_sequential_step(&ch, None)?;
    let rho0 = DensityMatrix::basis(0, Layout::qubits(&["q"])?)?;
    let traj = run(&step, &rho0, 10, &[Observable::qubit("1")?])?;
    for r in &traj.records {
        println!("step {:>2}: p1 = {:.5}", r.step, r.values[0].1);
    }
    Ok(())
}
