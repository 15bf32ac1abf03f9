//! One reusable environment qubit plus a control qubit realise any Pauli
//! channel; the error against the exact channel shrinks quadratically.

use openqc::channels::{apply_channel, pauli_channel};
use openqc::circuit::{build_sequential_step, write_circuit};
use openqc::engine::Evolution;
use openqc::qmath::trace_distance;
use openqc::random::{random_qubit_states, seeded};

fn main() -> openqc::Result<()> {
    let ch = pauli_channel(0.05, 0.02, 0.1)?;
    print!("{}", write_circuit(&build_sequential_step(&ch, None)?));

    let states = random_qubit_states(&mut seeded(7), 20);
    let mut previous: Option<f64> = None;
    for eps in [0.04, 0.02, 0.01, 0.005] {
        let ch = pauli_channel(eps, eps, eps)?;
        let step = build_sequential_step(&ch, None)?;
        let mut worst: f64 = 0.0;
        for rho in &states {
            let mut evo = Evolution::new(&step, rho)?;
            evo.advance()?;
            let direct = apply_channel(&ch, rho)?;
            worst = worst.max(trace_distance(&evo.system_state()?, &direct)?);
        }
        let ratio = previous.map_or(String::new(), |p| format!("  (÷{:.2})", p / worst));
        println!("eps = {eps:<6} max trace distance {worst:.3e}{ratio}");
        previous = Some(worst);
    }
    Ok(())
}
