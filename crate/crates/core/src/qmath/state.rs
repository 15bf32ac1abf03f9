use std::fmt;

use crate::error::{Error, Result};
use crate::qmath::matrix::{re, ComplexMatrix, C64, RECONSTRUCTION_TOL, VALIDITY_TOL};
use crate::qmath::ops::tensor_product;

/// A named subsystem of a register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wire {
    pub label: String,
    pub dim: usize,
}

impl Wire {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Self {
            label: label.into(),
            dim,
        }
    }

    pub fn qubit(label: impl Into<String>) -> Self {
        Self::new(label, 2)
    }
}

/// Ordered list of wires. The first wire is the most significant index block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    wires: Vec<Wire>,
}

impl Layout {
    pub fn new(wires: Vec<Wire>) -> Result<Self> {
        for (i, w) in wires.iter().enumerate() {
            if w.dim == 0 {
                return Err(Error::Layout(format!("wire `{}` has dimension 0", w.label)));
            }
            if w.label.is_empty() || w.label.chars().any(char::is_whitespace) {
                return Err(Error::Layout(format!("invalid wire label `{}`", w.label)));
            }
            if wires[..i].iter().any(|o| o.label == w.label) {
                return Err(Error::Layout(format!("duplicate wire label `{}`", w.label)));
            }
        }
        Ok(Self { wires })
    }

    pub fn qubits<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels.iter().map(|l| Wire::qubit(l.as_ref())).collect())
    }

    pub fn empty() -> Self {
        Self { wires: Vec::new() }
    }

    pub fn wires(&self) -> &[Wire] {
        &self.wires
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.wires.iter().map(|w| w.dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.wires.iter().map(|w| w.dim).collect()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.wires
            .iter()
            .position(|w| w.label == label)
            .ok_or_else(|| Error::UnknownWire(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.wires.iter().any(|w| w.label == label)
    }

    pub fn without(&self, pos: usize) -> Self {
        let mut wires = self.wires.clone();
        wires.remove(pos);
        Self { wires }
    }

    pub fn concat(&self, other: &Layout) -> Result<Self> {
        let mut wires = self.wires.clone();
        wires.extend(other.wires.iter().cloned());
        Self::new(wires)
    }
}

impl fmt::Display for Layout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .wires
            .iter()
            .map(|w| format!("{}:{}", w.label, w.dim))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix over a wire layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    layout: Layout,
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(matrix: ComplexMatrix, layout: Layout) -> Result<Self> {
        let rho = Self::from_parts_unchecked(matrix, layout)?;
        rho.check()?;
        Ok(rho)
    }

    /// Builds a state checking only the shape. Callers are responsible for
    /// the physical invariants (see [`DensityMatrix::check`]).
    pub fn from_parts_unchecked(matrix: ComplexMatrix, layout: Layout) -> Result<Self> {
        let ldim = if layout.is_empty() { 1 } else { layout.dim() };
        if ldim != matrix.dim() {
            return Err(Error::DimensionMismatch {
                expected: ldim,
                found: matrix.dim(),
            });
        }
        Ok(Self { matrix, layout })
    }

    /// Single-qubit state on wire `label`.
    pub fn qubit(label: &str, matrix: ComplexMatrix) -> Result<Self> {
        Self::new(matrix, Layout::qubits(&[label])?)
    }

    /// `|v⟩⟨v|` with `v` normalised first.
    pub fn pure(v: &[C64], layout: Layout) -> Result<Self> {
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&v), layout)
    }

    /// Computational basis state `|index⟩⟨index|`.
    pub fn basis(index: usize, layout: Layout) -> Result<Self> {
        let dim = layout.dim();
        if index >= dim {
            return Err(Error::InvalidState(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut m = ComplexMatrix::zeros(dim);
        m.set(index, index, re(1.0));
        Self::new(m, layout)
    }

    /// Maximally mixed state.
    pub fn maximally_mixed(layout: Layout) -> Result<Self> {
        let dim = layout.dim();
        Self::new(
            ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
            layout,
        )
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                // tr(ρ²) = Σ ρ_ij ρ_ji = Σ |ρ_ij|² for Hermitian ρ
                acc += (self.matrix.get(i, j) * self.matrix.get(j, i)).re;
            }
        }
        acc
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix.min_eigenvalue()
    }

    /// `tr(P ρ)` for an operator on the full register.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        Ok((op * &self.matrix).trace().re)
    }

    /// Checks unit trace, Hermiticity and numerical positivity.
    pub fn check(&self) -> Result<()> {
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > VALIDITY_TOL || tr.im.abs() > VALIDITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        if !self.matrix.is_hermitian(VALIDITY_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let min = self.min_eigenvalue();
        if min < -RECONSTRUCTION_TOL {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min:.3e} is negative"
            )));
        }
        Ok(())
    }

    /// Tensor product of two states; `self` becomes the more significant block.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Self::from_parts_unchecked(tensor_product(&self.matrix, &other.matrix), layout)
    }

    /// Relabels the wires without touching the matrix.
    pub fn with_layout(&self, layout: Layout) -> Result<Self> {
        if layout.dims() != self.layout.dims() {
            return Err(Error::Layout(format!(
                "cannot relabel {} as {}",
                self.layout, layout
            )));
        }
        Self::from_parts_unchecked(self.matrix.clone(), layout)
    }
}
