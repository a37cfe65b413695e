//! Reordering the diagonal of a Schur form by adjacent unitary swaps.

use crate::error::{Error, Result};
use crate::linalg::rotation::Rotation;
use crate::linalg::schur::SchurForm;
use crate::matrix::c64;

/// Swaps the diagonal entries at `k` and `k + 1` with a plane rotation,
/// keeping `a = u t u*`.
pub fn swap_adjacent(s: &mut SchurForm, k: usize) {
    let n = s.n();
    let a = s.t[(k, k)];
    let c = s.t[(k + 1, k + 1)];
    if a == c {
        return;
    }
    let (rot, _) = Rotation::zeroing(s.t[(k, k + 1)], c - a);
    rot.apply_rows(&mut s.t, k, k + 1, k..n);
    rot.apply_cols_adjoint(&mut s.t, k, k + 1, 0..k + 2);
    rot.apply_cols_adjoint(&mut s.u, k, k + 1, 0..n);
    s.t[(k + 1, k)] = c64::new(0.0, 0.0);
    s.t[(k, k)] = c;
    s.t[(k + 1, k + 1)] = a;
    s.order.swap(k, k + 1);
}

/// Stable bubble sort of the diagonal by `rank`; equal ranks are never swapped.
pub fn reorder_by_rank(s: &SchurForm, rank: &[usize]) -> SchurForm {
    assert_eq!(rank.len(), s.n());
    let mut out = s.clone();
    let mut rank = rank.to_vec();
    let n = rank.len();
    for pass in 0..n {
        let mut swapped = false;
        for k in 0..n.saturating_sub(1 + pass) {
            if rank[k] > rank[k + 1] {
                swap_adjacent(&mut out, k);
                rank.swap(k, k + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    out
}

/// Reorders `s` so that `diag(t)` follows `target`, matching each target value to
/// the nearest unused diagonal entry within `tol`.
pub fn reorder_schur(s: &SchurForm, target: &[c64], tol: f64) -> Result<SchurForm> {
    let n = s.n();
    if target.len() != n {
        return Err(Error::DimensionMismatch(target.len(), n));
    }
    let diag = s.t.diagonal();
    let mut rank = vec![usize::MAX; n];
    for (r, want) in target.iter().enumerate() {
        let best = (0..n)
            .filter(|&p| rank[p] == usize::MAX)
            .min_by(|&p, &q| (diag[p] - want).norm().total_cmp(&(diag[q] - want).norm()))
            .ok_or(Error::NotAPermutation)?;
        if (diag[best] - want).norm() > tol {
            return Err(Error::NotAPermutation);
        }
        rank[best] = r;
    }
    Ok(reorder_by_rank(s, &rank))
}
