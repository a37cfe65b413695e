//! Complex Schur decomposition by shifted QR iteration on the Hessenberg form.

use crate::error::{Error, Result};
use crate::linalg::hessenberg::hessenberg;
use crate::linalg::rotation::Rotation;
use crate::matrix::{c64, ComplexMatrix};

/// Relative deflation threshold on subdiagonal entries.
pub const DEFLATION_TOL: f64 = 1e-14;

/// `a = u t u*` with `t` upper triangular and `u` unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurForm {
    pub t: ComplexMatrix,
    pub u: ComplexMatrix,
    /// Eigenvalues in the order they appear on `diag(t)`.
    pub order: Vec<c64>,
}

impl SchurForm {
    pub fn n(&self) -> usize {
        self.t.n()
    }

    /// `u t u*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.t.conjugated_by(&self.u)
    }

    /// `‖a − u t u*‖_F`.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        (a - &self.reconstruct()).frobenius_norm()
    }

    pub(crate) fn refresh_order(&mut self) {
        self.order = self.t.diagonal();
    }
}

/// Schur decomposition with the default sweep budget of `30 n` per eigenvalue.
pub fn schur(a: &ComplexMatrix) -> Result<SchurForm> {
    schur_with_budget(a, 30 * a.n())
}

/// Schur decomposition; fails with [`Error::NoConvergence`] if any eigenvalue
/// needs more than `max_iter` QR sweeps before it deflates.
pub fn schur_with_budget(a: &ComplexMatrix, max_iter: usize) -> Result<SchurForm> {
    let (mut t, mut u) = hessenberg(a)?;
    let n = t.n();
    let norm = t.frobenius_norm();
    let zero = c64::new(0.0, 0.0);

    let mut hi = n - 1;
    let mut its = 0usize;
    while hi > 0 {
        // locate the start of the unreduced block ending at `hi`
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let local = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            if sub <= DEFLATION_TOL * local || sub <= f64::EPSILON * 0.5 * norm {
                t[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        if its > max_iter {
            return Err(Error::NoConvergence(max_iter));
        }

        let shift = if its.is_multiple_of(10) {
            // exceptional shift to break cycling
            t[(hi, hi)] + c64::new(0.75 * t[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };

        // implicit single-shift QR sweep over lo..=hi
        for k in lo..hi {
            let (f, g) = if k == lo {
                (t[(k, k)] - shift, t[(k + 1, k)])
            } else {
                (t[(k, k - 1)], t[(k + 1, k - 1)])
            };
            let (rot, r) = Rotation::zeroing(f, g);
            if k > lo {
                t[(k, k - 1)] = r;
                t[(k + 1, k - 1)] = zero;
            }
            rot.apply_rows(&mut t, k, k + 1, k..n);
            let last_row = (k + 2).min(hi);
            rot.apply_cols_adjoint(&mut t, k, k + 1, 0..last_row + 1);
            rot.apply_cols_adjoint(&mut u, k, k + 1, 0..n);
        }
    }
    t.zero_lower();
    let order = t.diagonal();
    Ok(SchurForm { t, u, order })
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: c64, b: c64, c: c64, d: c64) -> c64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let e1 = mean + disc;
    let e2 = mean - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        e1
    } else {
        e2
    }
}
