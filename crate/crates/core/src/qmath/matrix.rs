use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance used by the validity predicates.
pub const VALIDITY_TOL: f64 = 1e-10;
/// Tolerance used when checking reconstructions (square roots, completeness).
pub const RECONSTRUCTION_TOL: f64 = 1e-9;

pub type C64 = Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Dense square complex matrix.
///
/// Storage is delegated to `nalgebra`; construction from flat data is
/// row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    /// Builds a `dim × dim` matrix from row-major entries.
    pub fn from_row_major(dim: usize, entries: &[C64]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Shape("dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Shape(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(dim, dim, entries),
        })
    }

    /// Row-major constructor from real entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let v: Vec<C64> = entries.iter().map(|&x| re(x)).collect();
        Self::from_row_major(dim, &v)
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for (i, d) in diag.iter().enumerate() {
            m.inner[(i, i)] = *d;
        }
        m
    }

    /// `|v⟩⟨v|` for a column vector `v`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.inner[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub(crate) fn from_inner(inner: DMatrix<C64>) -> Result<Self> {
        if inner.nrows() != inner.ncols() || inner.nrows() == 0 {
            return Err(Error::Shape(format!(
                "{}x{} is not a non-empty square matrix",
                inner.nrows(),
                inner.ncols()
            )));
        }
        Ok(Self { inner })
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.inner[(row, col)]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        self.inner[(row, col)] = value;
    }

    /// Entries in row-major order.
    pub fn to_row_major(&self) -> Vec<C64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            inner: self.inner.map(|z| z.conj()),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            inner: self.inner.transpose(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            inner: &self.inner * s,
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && (self - other).max_abs() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                if (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = &self.adjoint() * self;
        prod.approx_eq(&Self::identity(self.dim()), tol)
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.min_eigenvalue() >= -tol
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self {
            inner: (&self.inner + self.inner.adjoint()) * re(0.5),
        }
    }

    /// Eigendecomposition of the Hermitian part of `self`.
    ///
    /// Eigenvalues come back in ascending order; column `i` of the returned
    /// matrix is the eigenvector for eigenvalue `i`. The result depends only
    /// on the input entries.
    pub fn eigh(&self) -> (Vec<f64>, ComplexMatrix) {
        let eig = self.hermitian_part().inner.symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let n = self.dim();
        let mut vecs = DMatrix::zeros(n, n);
        let mut vals = Vec::with_capacity(n);
        for (dst, &src) in order.iter().enumerate() {
            vals.push(eig.eigenvalues[src]);
            vecs.set_column(dst, &eig.eigenvectors.column(src));
        }
        (vals, ComplexMatrix { inner: vecs })
    }

    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self
            .hermitian_part()
            .inner
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues_hermitian()[0]
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.inner.singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.inner.clone().try_inverse().map(|inner| Self { inner })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match matrix dimension");
        (0..n)
            .map(|i| (0..n).map(|j| self.inner[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Column-stacking vectorization.
    pub fn vectorize(&self) -> Vec<C64> {
        self.inner.iter().copied().collect()
    }

    /// Inverse of [`ComplexMatrix::vectorize`].
    pub fn unvectorize(v: &[C64]) -> Result<Self> {
        let n = (v.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != v.len() {
            return Err(Error::Shape(format!(
                "vector of length {} is not a vectorized square matrix",
                v.len()
            )));
        }
        Ok(Self {
            inner: DMatrix::from_column_slice(n, n, v),
        })
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.inner[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix product dimension mismatch");
        ComplexMatrix {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix sum dimension mismatch");
        ComplexMatrix {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.dim(),
            rhs.dim(),
            "matrix difference dimension mismatch"
        );
        ComplexMatrix {
            inner: &self.inner - &rhs.inner,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_layout() {
        let m = ComplexMatrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.get(0, 1), re(2.0));
        assert_eq!(m.get(1, 0), re(3.0));
        assert_eq!(m.to_row_major()[1], re(2.0));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ComplexMatrix::from_real(2, &[1.0; 3]).is_err());
        assert!(ComplexMatrix::from_real(0, &[]).is_err());
    }

    #[test]
    fn vectorization_stacks_columns() {
        let m = ComplexMatrix::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let v = m.vectorize();
        assert_eq!(v, vec![re(1.0), re(3.0), re(2.0), re(4.0)]);
        assert_eq!(ComplexMatrix::unvectorize(&v).unwrap(), m);
    }

    #[test]
    fn eigh_is_sorted_and_reconstructs() {
        let m = ComplexMatrix::from_row_major(2, &[re(2.0), c(0.0, 1.0), c(0.0, -1.0), re(2.0)])
            .unwrap();
        let (vals, vecs) = m.eigh();
        assert!((vals[0] - 1.0).abs() < 1e-12 && (vals[1] - 3.0).abs() < 1e-12);
        let d = ComplexMatrix::from_diagonal(&[re(vals[0]), re(vals[1])]);
        let back = &(&vecs * &d) * &vecs.adjoint();
        assert!(back.approx_eq(&m, 1e-12));
    }

    #[test]
    fn predicates() {
        let y = ComplexMatrix::from_row_major(2, &[re(0.0), c(0.0, -1.0), c(0.0, 1.0), re(0.0)])
            .unwrap();
        assert!(y.is_hermitian(VALIDITY_TOL));
        assert!(y.is_unitary(VALIDITY_TOL));
        assert!(!y.is_psd(VALIDITY_TOL));
        assert!(ComplexMatrix::identity(3).is_psd(VALIDITY_TOL));
    }
}
