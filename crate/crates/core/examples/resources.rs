//! Qubit and gate counts: direct dilation against the sequential scheme as the
//! Kraus rank grows.

use openqc::analysis::{resource_count, Method};
use openqc::channels::{pauli_mixture, Pauli};
use openqc::circuit::build_sequential_step;

fn main() -> openqc::Result<()> {
    let cycle = [Pauli::X, Pauli::Y, Pauli::Z];
    println!(
        "{:>4} {:>16} {:>16} {:>16}",
        "l", "direct qubits", "sequential qubits", "sequential gates"
    );
    for l in [2usize, 4, 8, 16] {
        let w = 0.1 / (l - 1) as f64;
        let mut terms = vec![(Pauli::I, 0.9)];
        terms.extend((0..l - 1).map(|i| (cycle[i % 3], w)));
        let ch = pauli_mixture(&terms)?;
        let step = build_sequential_step(&ch, None)?;
        let seq = resource_count(&step, 1, Method::Sequential, 1, l);
        let direct = resource_count(&step, 1, Method::DirectDilation, 1, l);
        println!(
            "{l:>4} {:>16} {:>16} {:>16}",
            direct.qubit_count, seq.qubit_count, seq.gates_per_step
        );
    }
    Ok(())
}
