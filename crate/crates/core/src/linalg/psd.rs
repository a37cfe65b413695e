//! Minimum-norm least squares for symmetric positive semidefinite systems.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Eigenvalues below `NULL_CUTOFF · max |λ|` are treated as zero.
pub const NULL_CUTOFF: f64 = 1e-12;

/// Default relative consistency tolerance.
pub const DEFAULT_TOL_CONSISTENT: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct PsdSolution {
    pub x: DVector<f64>,
    /// `‖S x − c‖₂`.
    pub residual: f64,
}

/// Eigendecomposition of a symmetric matrix, split into range and null space.
///
/// Factor once, then solve for many right-hand sides.
#[derive(Clone, Debug)]
pub struct PsdPseudoInverse {
    matrix: DMatrix<f64>,
    /// Orthonormal eigenvectors spanning the numerical range.
    range: Vec<(f64, DVector<f64>)>,
    null: Vec<DVector<f64>>,
    norm: f64,
}

impl PsdPseudoInverse {
    pub fn new(s: &DMatrix<f64>) -> Result<Self> {
        if s.nrows() != s.ncols() {
            return Err(Error::NotSquare {
                rows: s.nrows(),
                cols: s.ncols(),
            });
        }
        if s.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let dim = s.nrows();
        if dim == 0 {
            return Ok(Self {
                matrix: s.clone(),
                range: Vec::new(),
                null: Vec::new(),
                norm: 0.0,
            });
        }
        let eig = SymmetricEigen::new(s.clone());
        let max = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let cutoff = NULL_CUTOFF * max;
        let mut range = Vec::new();
        let mut null = Vec::new();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let v = eig.eigenvectors.column(k).into_owned();
            if lambda.abs() > cutoff && lambda != 0.0 {
                range.push((lambda, v));
            } else {
                null.push(v);
            }
        }
        Ok(Self {
            matrix: s.clone(),
            range,
            null,
            norm: max,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Numerical rank.
    pub fn rank(&self) -> usize {
        self.range.len()
    }

    /// Orthonormal basis of the numerical null space.
    pub fn null_space(&self) -> &[DVector<f64>] {
        &self.null
    }

    /// Spectral norm of the factored matrix.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Minimum-norm least-squares solution, without the consistency check.
    pub fn solve_unchecked(&self, c: &DVector<f64>) -> PsdSolution {
        let mut x = DVector::zeros(self.dim());
        for (lambda, v) in &self.range {
            x.axpy(v.dot(c) / lambda, v, 1.0);
        }
        let residual = (&self.matrix * &x - c).norm();
        PsdSolution { x, residual }
    }

    /// Minimum-norm least-squares solution; fails when the system is not
    /// consistent to `tol_consistent · (‖S‖‖x‖ + ‖c‖)`.
    pub fn solve(&self, c: &DVector<f64>, tol_consistent: f64) -> Result<PsdSolution> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch(c.len(), self.dim()));
        }
        let sol = self.solve_unchecked(c);
        let bound = tol_consistent * (self.norm * sol.x.norm() + c.norm());
        if sol.residual > bound {
            return Err(Error::NotConsistent {
                residual: sol.residual,
                bound,
            });
        }
        Ok(sol)
    }
}

/// Minimum-norm `x` minimizing `‖S x − c‖₂` for symmetric `S`.
pub fn solve_psd_consistent(s: &DMatrix<f64>, c: &DVector<f64>) -> Result<PsdSolution> {
    PsdPseudoInverse::new(s)?.solve(c, DEFAULT_TOL_CONSISTENT)
}
