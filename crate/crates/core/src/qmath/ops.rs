use crate::error::{Error, Result};
use crate::qmath::matrix::{re, ComplexMatrix, C64, RECONSTRUCTION_TOL, VALIDITY_TOL};
use crate::qmath::state::DensityMatrix;

/// Kronecker product `a ⊗ b`; `a` indexes the more significant block.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_inner(a.inner().kronecker(b.inner()))
        .expect("kronecker product of square matrices is square")
}

/// Traces out `wire`, keeping the remaining wires in order.
pub fn partial_trace(rho: &DensityMatrix, wire: &str) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let pos = layout.position(wire)?;
    let (left, mid, right) = split_dims(&layout.dims(), pos);
    let m = rho.matrix();
    let out_dim = left * right;
    let mut out = ComplexMatrix::zeros(out_dim);
    for a in 0..left {
        for cc in 0..right {
            let row = a * right + cc;
            for a2 in 0..left {
                for c2 in 0..right {
                    let col = a2 * right + c2;
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..mid {
                        acc += m.get((a * mid + b) * right + cc, (a2 * mid + b) * right + c2);
                    }
                    out.set(row, col, acc);
                }
            }
        }
    }
    DensityMatrix::from_parts_unchecked(out, layout.without(pos))
}

/// Reduced state over `keep`, tracing out every other wire.
pub fn reduce_to(rho: &DensityMatrix, keep: &[&str]) -> Result<DensityMatrix> {
    for k in keep {
        rho.layout().position(k)?;
    }
    let drop: Vec<String> = rho
        .layout()
        .wires()
        .iter()
        .filter(|w| !keep.contains(&w.label.as_str()))
        .map(|w| w.label.clone())
        .collect();
    let mut out = rho.clone();
    for label in drop {
        out = partial_trace(&out, &label)?;
    }
    Ok(out)
}

/// Traces out `wire` and re-inserts it in `|0⟩⟨0|` at the same position.
pub fn reset_wire(rho: &DensityMatrix, wire: &str) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let pos = layout.position(wire)?;
    let (left, mid, right) = split_dims(&layout.dims(), pos);
    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(m.dim());
    for a in 0..left {
        for cc in 0..right {
            let row = a * mid * right + cc;
            for a2 in 0..left {
                for c2 in 0..right {
                    let col = a2 * mid * right + c2;
                    let mut acc = C64::new(0.0, 0.0);
                    for b in 0..mid {
                        acc += m.get((a * mid + b) * right + cc, (a2 * mid + b) * right + c2);
                    }
                    out.set(row, col, acc);
                }
            }
        }
    }
    DensityMatrix::from_parts_unchecked(out, layout.clone())
}

/// Conjugates `rho` by `u` acting on `wires` (first listed wire is the most
/// significant index of `u`), identity elsewhere.
pub fn apply_local_unitary(
    rho: &DensityMatrix,
    u: &ComplexMatrix,
    wires: &[&str],
) -> Result<DensityMatrix> {
    let layout = rho.layout();
    let dims = layout.dims();
    let positions = wires
        .iter()
        .map(|w| layout.position(w))
        .collect::<Result<Vec<_>>>()?;
    for (i, p) in positions.iter().enumerate() {
        if positions[..i].contains(p) {
            return Err(Error::Layout(format!("wire `{}` listed twice", wires[i])));
        }
    }
    let gdim: usize = positions.iter().map(|&p| dims[p]).product();
    if gdim != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: gdim,
            found: u.dim(),
        });
    }
    let groups = index_groups(&dims, &positions);
    let n = rho.dim();
    let m = rho.matrix();

    // left multiplication: (U ⊗ I) ρ
    let mut left = ComplexMatrix::zeros(n);
    let mut buf = vec![C64::new(0.0, 0.0); gdim];
    for col in 0..n {
        for g in &groups {
            for (k, &idx) in g.iter().enumerate() {
                buf[k] = m.get(idx, col);
            }
            for (j, &idx) in g.iter().enumerate() {
                let acc: C64 = buf.iter().enumerate().map(|(k, b)| u.get(j, k) * b).sum();
                left.set(idx, col, acc);
            }
        }
    }
    // right multiplication by (U ⊗ I)†
    let mut out = ComplexMatrix::zeros(n);
    for row in 0..n {
        for g in &groups {
            for (k, &idx) in g.iter().enumerate() {
                buf[k] = left.get(row, idx);
            }
            for (j, &idx) in g.iter().enumerate() {
                let acc: C64 = buf
                    .iter()
                    .enumerate()
                    .map(|(k, b)| b * u.get(j, k).conj())
                    .sum();
                out.set(row, idx, acc);
            }
        }
    }
    DensityMatrix::from_parts_unchecked(out, layout.clone())
}

/// Full-register matrix of `u` acting on `positions` of a register with `dims`.
pub fn embed_operator(
    u: &ComplexMatrix,
    dims: &[usize],
    positions: &[usize],
) -> Result<ComplexMatrix> {
    let gdim: usize = positions.iter().map(|&p| dims[p]).product();
    if gdim != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: gdim,
            found: u.dim(),
        });
    }
    let n: usize = dims.iter().product();
    let mut out = ComplexMatrix::zeros(n);
    for g in index_groups(dims, positions) {
        for (j, &r) in g.iter().enumerate() {
            for (k, &cidx) in g.iter().enumerate() {
                out.set(r, cidx, u.get(j, k));
            }
        }
    }
    Ok(out)
}

/// Unique positive semidefinite square root via eigendecomposition.
///
/// Eigenvalues in `[-1e-9, 0)` are clamped to zero; anything more negative is
/// an error.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_hermitian(VALIDITY_TOL) {
        return Err(Error::PsdViolation("input is not Hermitian".into()));
    }
    let (vals, vecs) = m.eigh();
    if let Some(&min) = vals.first() {
        if min < -RECONSTRUCTION_TOL {
            return Err(Error::PsdViolation(format!(
                "eigenvalue {min:.3e} below -1e-9"
            )));
        }
    }
    let roots: Vec<C64> = vals.iter().map(|&v| re(v.max(0.0).sqrt())).collect();
    let d = ComplexMatrix::from_diagonal(&roots);
    Ok((&(&vecs * &d) * &vecs.adjoint()).hermitian_part())
}

/// `½ Σ |λᵢ(ρ − σ)|`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    if rho.layout().dims() != sigma.layout().dims() {
        return Err(Error::Layout(format!(
            "layouts {} and {} differ",
            rho.layout(),
            sigma.layout()
        )));
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok(0.5
        * diff
            .eigenvalues_hermitian()
            .iter()
            .map(|l| l.abs())
            .sum::<f64>())
}

fn split_dims(dims: &[usize], pos: usize) -> (usize, usize, usize) {
    let left = dims[..pos].iter().product();
    let right = dims[pos + 1..].iter().product();
    (left, dims[pos], right)
}

/// For each assignment of the untouched wires, the full-register indices
/// enumerated in the gate's own (mixed-radix) ordering.
fn index_groups(dims: &[usize], positions: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let gdim: usize = positions.iter().map(|&p| dims[p]).product();
    let offsets: Vec<usize> = (0..gdim)
        .map(|mut s| {
            let mut off = 0;
            for &p in positions.iter().rev() {
                off += (s % dims[p]) * strides[p];
                s /= dims[p];
            }
            off
        })
        .collect();
    (0..n)
        .filter(|&idx| {
            positions
                .iter()
                .all(|&p| (idx / strides[p]).is_multiple_of(dims[p]))
        })
        .map(|base| offsets.iter().map(|o| base + o).collect())
        .collect()
}
