//! Dense square complex matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shorthand for a binary64 complex number.
#[allow(non_camel_case_types)]
pub type c64 = Complex64;

/// A nonempty square complex matrix with finite entries.
///
/// This is the carrier for every matrix in the crate: inputs, Schur factors,
/// canonical members and certificates.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<c64>);

impl ComplexMatrix {
    /// Wraps a nalgebra matrix after checking that it is square, nonempty and finite.
    pub fn new(m: DMatrix<c64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(m))
    }

    /// Builds an `n x n` matrix from row-major entries.
    pub fn from_row_slice(n: usize, entries: &[c64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        Self::new(DMatrix::from_row_slice(n, n, entries))
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let entries: Vec<c64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| c64::new(x, 0.0)))
            .collect();
        Self::from_row_slice(n, &entries)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> c64) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self(DMatrix::from_fn(n, n, f))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self(DMatrix::zeros(n, n))
    }

    pub fn from_diagonal(diag: &[c64]) -> Self {
        Self::from_fn(diag.len(), |i, j| if i == j { diag[i] } else { c64::new(0.0, 0.0) })
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<c64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<c64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<c64> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)])
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn diagonal(&self) -> Vec<c64> {
        (0..self.n()).map(|i| self.0[(i, i)]).collect()
    }

    /// Largest modulus among the strictly lower entries.
    pub fn max_lower(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for j in 0..n {
            for i in j + 1..n {
                worst = worst.max(self.0[(i, j)].norm());
            }
        }
        worst
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.max_lower() == 0.0
    }

    /// Writes exact zeros below the diagonal.
    pub fn zero_lower(&mut self) {
        let n = self.n();
        for j in 0..n {
            for i in j + 1..n {
                self.0[(i, j)] = c64::new(0.0, 0.0);
            }
        }
    }

    /// `‖U* U − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        let g = self.0.adjoint() * &self.0;
        let n = self.n();
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                s += (g[(i, j)] - c64::new(target, 0.0)).norm_sqr();
            }
        }
        s.sqrt()
    }

    /// `U · self · U*`.
    pub fn conjugated_by(&self, u: &ComplexMatrix) -> ComplexMatrix {
        Self(&u.0 * &self.0 * u.0.adjoint())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = c64;

    fn index(&self, idx: (usize, usize)) -> &c64 {
        &self.0[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut c64 {
        &mut self.0[idx]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n(), rhs.n(), "dimension mismatch in product");
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n(), rhs.n(), "dimension mismatch in difference");
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        writeln!(f, "ComplexMatrix({n}x{n}) [")?;
        for i in 0..n {
            write!(f, " ")?;
            for j in 0..n {
                let z = self.0[(i, j)];
                write!(f, " {:>10.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
