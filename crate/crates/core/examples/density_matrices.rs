//! Registers, tensor products, partial traces and distances.

use openqc::qmath::{partial_trace, re, trace_distance, DensityMatrix, Layout};

fn main() -> openqc::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // Bell state on wires a (most significant) and b.
    let bell = DensityMatrix::pure(
        &[re(s), re(0.0), re(0.0), re(s)],
        Layout::qubits(&["a", "b"])?,
    )?;
    let a = partial_trace(&bell, "b")?;
    println!(
        "Bell state purity {:.3}, reduced purity {:.3}",
        bell.purity(),
        a.purity()
    );

    let q = Layout::qubits(&["q"])?;
    let zero = DensityMatrix::basis(0, q.clone())?;
    let one = DensityMatrix::basis(1, q.clone())?;
    let plus = DensityMatrix::pure(&[re(s), re(s)], q)?;
    println!("D(|0>, |1>) = {:.4}", trace_distance(&zero, &one)?);
    println!("D(|0>, |+>) = {:.4}", trace_distance(&zero, &plus)?);

    let product = zero.tensor(&plus.with_layout(Layout::qubits(&["r"])?)?)?;
    println!(
        "|0>|+> lives on {} with dim {}",
        product.layout(),
        product.dim()
    );
    Ok(())
}
