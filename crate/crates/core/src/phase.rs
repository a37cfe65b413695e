//! Argument balancing by diagonal unitary similarity.
//!
//! For an upper triangular `T`, the strictly upper entries are written as
//! `T_ij = r_ij · exp(i(φ_ij + π))`. A similarity `X T X*` with
//! `X = diag(e^{iψ_1}, …, e^{iψ_{n-1}}, 1)` shifts the arguments by
//! `ψ_i − ψ_j` (with `ψ_n = 0`). The phase system `R(r) ψ = −b(r, φ + 2πm)`
//! chooses `ψ` so that the `r`-weighted arguments balance at every node
//! `s = 1..n−1`. `R(r)` is the weighted graph Laplacian on nodes `1..n` with
//! node `n` grounded, and `b = Dᵀ W φ` for the node-pair incidence `D`, so the
//! system is always consistent and the products `f = W D ψ` are unique even
//! when `R(r)` is singular.
//!
//! Indices are zero-based throughout: pairs `(i, j)` with `i < j < n`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::psd::{PsdPseudoInverse, DEFAULT_TOL_CONSISTENT};
use crate::matrix::ComplexMatrix;

/// Default relative threshold below which an entry counts as zero.
pub const DEFAULT_TOL_ZERO: f64 = 1e-12;

/// Strictly upper positions `(i, j)` of an `n x n` matrix in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairIndex {
    n: usize,
}

impl PairIndex {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of `(i, j)`, `i < j < n`, in the lexicographic order.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j)))
    }

    /// Whether the pair carries a free branch choice, i.e. does not touch the last column.
    pub fn is_free(&self, _i: usize, j: usize) -> bool {
        j + 1 < self.n
    }
}

/// Magnitudes and shifted arguments of the strictly upper entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseData {
    pub pairs: PairIndex,
    pub r: Vec<f64>,
    /// `arg T_ij − π` with `arg ∈ [0, 2π)`, so `phi ∈ [−π, π)`.
    pub phi: Vec<f64>,
    pub zero_mask: Vec<bool>,
}

/// Solution of the phase system for one branch vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSolution {
    /// `ψ_1..ψ_{n−1}`; `ψ_n = 0` implicitly.
    pub psi: Vec<f64>,
    /// `r_ij (ψ_i − ψ_j)`, and `r_in ψ_i` in the last column.
    pub f: Vec<f64>,
    pub solver_residual: f64,
}

/// Wraps an angle into `[−π, π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y >= PI {
        y -= 2.0 * PI;
    }
    y
}

/// Reads `r` and `phi` off the strictly upper part of `t`.
///
/// Entries with `r ≤ tol_zero · max r` are masked and get `phi = 0`.
pub fn extract_phase(t: &ComplexMatrix, tol_zero: f64) -> PhaseData {
    let pairs = PairIndex::new(t.n());
    let r: Vec<f64> = pairs.pairs().map(|(i, j)| t[(i, j)].norm()).collect();
    let max = r.iter().copied().fold(0.0, f64::max);
    let cutoff = tol_zero * max;
    let mut phi = Vec::with_capacity(r.len());
    let mut zero_mask = Vec::with_capacity(r.len());
    for (k, (i, j)) in pairs.pairs().enumerate() {
        if r[k] <= cutoff || r[k] == 0.0 {
            phi.push(0.0);
            zero_mask.push(true);
        } else {
            let mut arg = t[(i, j)].arg();
            if arg < 0.0 {
                arg += 2.0 * PI;
            }
            let mut p = arg - PI;
            if p >= PI {
                p -= 2.0 * PI;
            }
            phi.push(p);
            zero_mask.push(false);
        }
    }
    PhaseData {
        pairs,
        r,
        phi,
        zero_mask,
    }
}

/// The `(n−1) x (n−1)` grounded weighted Laplacian of the pair weights `w`.
pub fn weighted_laplacian(pairs: PairIndex, w: &[f64]) -> Result<DMatrix<f64>> {
    if w.len() != pairs.len() {
        return Err(Error::DimensionMismatch(w.len(), pairs.len()));
    }
    let dim = pairs.n().saturating_sub(1);
    let mut m = DMatrix::zeros(dim, dim);
    for (k, (i, j)) in pairs.pairs().enumerate() {
        let wk = w[k];
        if wk.is_nan() || wk < 0.0 {
            return Err(Error::NegativeWeight { i, j, value: wk });
        }
        m[(i, i)] += wk;
        if j < dim {
            m[(j, j)] += wk;
            m[(i, j)] -= wk;
            m[(j, i)] -= wk;
        }
    }
    Ok(m)
}

/// Node balance vector `b_s = −Σ_{k<s} r_ks φ_ks + Σ_{k>s} r_sk φ_sk`, `s < n−1`.
pub fn balance_vector(pairs: PairIndex, r: &[f64], phi: &[f64]) -> DVector<f64> {
    let dim = pairs.n().saturating_sub(1);
    let mut b = DVector::zeros(dim);
    for (k, (i, j)) in pairs.pairs().enumerate() {
        let term = r[k] * phi[k];
        b[i] += term;
        if j < dim {
            b[j] -= term;
        }
    }
    b
}

/// The quantities `r_ij (ψ_i − ψ_j)` (with `ψ_n = 0`).
pub fn invariant_quantities(pairs: PairIndex, r: &[f64], psi: &[f64]) -> Vec<f64> {
    pairs
        .pairs()
        .enumerate()
        .map(|(k, (i, j))| r[k] * (psi[i] - psi.get(j).copied().unwrap_or(0.0)))
        .collect()
}

/// Unwrapped arguments `φ + 2πm + ψ_i − ψ_j` after the transformation.
pub fn transformed_arguments(p: &PhaseData, m: &[i32], psi: &[f64]) -> Vec<f64> {
    p.pairs
        .pairs()
        .enumerate()
        .map(|(k, (i, j))| {
            p.phi[k] + 2.0 * PI * m[k] as f64 + psi[i] - psi.get(j).copied().unwrap_or(0.0)
        })
        .collect()
}

/// Largest node imbalance `|b_s(r, φ̃)|` of already transformed arguments.
pub fn balance_residual(p: &PhaseData, phi_transformed: &[f64]) -> f64 {
    balance_vector(p.pairs, &p.r, phi_transformed)
        .iter()
        .fold(0.0, |m, x| m.max(x.abs()))
}

/// The phase system for fixed magnitudes, factored once for all branch vectors.
#[derive(Clone, Debug)]
pub struct PhaseSystem {
    data: PhaseData,
    solver: PsdPseudoInverse,
    base: DVector<f64>,
    tol_consistent: f64,
}

impl PhaseSystem {
    pub fn new(data: PhaseData) -> Result<Self> {
        Self::with_tolerance(data, DEFAULT_TOL_CONSISTENT)
    }

    pub fn with_tolerance(data: PhaseData, tol_consistent: f64) -> Result<Self> {
        let laplacian = weighted_laplacian(data.pairs, &data.r)?;
        let solver = PsdPseudoInverse::new(&laplacian)?;
        let base = balance_vector(data.pairs, &data.r, &data.phi);
        Ok(Self {
            data,
            solver,
            base,
            tol_consistent,
        })
    }

    pub fn data(&self) -> &PhaseData {
        &self.data
    }

    pub fn solver(&self) -> &PsdPseudoInverse {
        &self.solver
    }

    /// Right-hand side `b(r, φ + 2πm)`, using linearity in the arguments.
    pub fn rhs(&self, m: &[i32]) -> DVector<f64> {
        let mf: Vec<f64> = m.iter().map(|&x| x as f64).collect();
        let shift = balance_vector(self.data.pairs, &self.data.r, &mf);
        &self.base + shift * (2.0 * PI)
    }

    /// Minimum-norm `ψ` with `R(r) ψ = −b(r, φ + 2πm)`.
    pub fn solve(&self, m: &[i32]) -> Result<PhaseSolution> {
        if m.len() != self.data.pairs.len() {
            return Err(Error::DimensionMismatch(m.len(), self.data.pairs.len()));
        }
        let rhs = -self.rhs(m);
        let sol = self.solver.solve(&rhs, self.tol_consistent)?;
        let psi: Vec<f64> = sol.x.iter().copied().collect();
        let f = invariant_quantities(self.data.pairs, &self.data.r, &psi);
        Ok(PhaseSolution {
            psi,
            f,
            solver_residual: sol.residual,
        })
    }
}

/// Solves the phase system for a single branch vector `m`.
pub fn solve_phase(p: &PhaseData, m: &[i32]) -> Result<PhaseSolution> {
    PhaseSystem::new(p.clone())?.solve(m)
}
