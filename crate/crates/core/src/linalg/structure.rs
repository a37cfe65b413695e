//! Jordan-structure checks on Schur forms and cleanup of repeated-eigenvalue blocks.

use nalgebra::DMatrix;

use crate::linalg::cluster::cluster_spectra;
use crate::linalg::hessenberg::reflect_similarity;
use crate::linalg::schur::SchurForm;
use crate::matrix::{c64, ComplexMatrix};

/// Default relative threshold on the second-smallest singular value.
pub const DEFAULT_TOL_RANK: f64 = 1e-10;

/// Default relative single-linkage tolerance for eigenvalue clusters.
pub const DEFAULT_TOL_CLUSTER: f64 = 1e-8;

/// Whether every eigenvalue of `s` has geometric multiplicity one.
///
/// Eigenvalues are clustered from `diag(t)` with the default tolerances.
pub fn is_nonderogatory(s: &SchurForm, tol_rank: f64) -> bool {
    nonderogatory_margin(s) > tol_rank
}

/// Smallest ratio `σ_{n-1}(T − λI) / ‖T‖_F` over the eigenvalue clusters of `s`.
///
/// `f64::INFINITY` for `n = 1`.
pub fn nonderogatory_margin(s: &SchurForm) -> f64 {
    let norm = s.t.frobenius_norm().max(f64::MIN_POSITIVE);
    let diag = s.t.diagonal();
    let clustering = match cluster_spectra(&[&diag], DEFAULT_TOL_CLUSTER * norm, norm) {
        Ok(c) => c,
        Err(_) => return 0.0,
    };
    let reps: Vec<c64> = clustering.clusters.iter().map(|c| c.representative).collect();
    margin_at(&s.t, &reps)
}

/// Smallest `σ_{n-1}(T − λI) / ‖T‖_F` over the given eigenvalues.
pub fn margin_at(t: &ComplexMatrix, eigenvalues: &[c64]) -> f64 {
    let n = t.n();
    if n == 1 {
        return f64::INFINITY;
    }
    let norm = t.frobenius_norm();
    if norm == 0.0 {
        return 0.0;
    }
    eigenvalues
        .iter()
        .map(|&lambda| {
            let shifted = DMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    t[(i, j)] - lambda
                } else {
                    t[(i, j)]
                }
            });
            let mut sv: Vec<f64> = shifted.singular_values().iter().copied().collect();
            sv.sort_by(f64::total_cmp);
            sv[1] / norm
        })
        .fold(f64::INFINITY, f64::min)
}

/// Re-triangularizes each contiguous block of a repeated eigenvalue.
///
/// `cluster_of[p]` is the cluster id of diagonal position `p`; positions of one
/// cluster must be contiguous. For a block of size `m > 1` with mean `μ`, the
/// block `B − μI` is numerically nilpotent. Its kernel chain is peeled off one
/// vector at a time (smallest right singular vector, then deflate), which gives a
/// well-conditioned triangular form with the diagonal set exactly to `μ`.
pub fn settle_cluster_blocks(s: &SchurForm, cluster_of: &[usize]) -> SchurForm {
    let n = s.n();
    assert_eq!(cluster_of.len(), n);
    let mut out = s.clone();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cluster_of[end] == cluster_of[start] {
            end += 1;
        }
        if end - start > 1 {
            settle_block(&mut out, start, end);
        }
        start = end;
    }
    out.refresh_order();
    out
}

fn settle_block(s: &mut SchurForm, start: usize, end: usize) {
    let m = end - start;
    let mean: c64 = (start..end).map(|p| s.t[(p, p)]).sum::<c64>() / m as f64;
    for k in start..end - 1 {
        let size = end - k;
        let block = DMatrix::from_fn(size, size, |i, j| {
            let z = s.t[(k + i, k + j)];
            if i == j {
                z - mean
            } else {
                z
            }
        });
        let svd = block.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let idx = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let v: Vec<c64> = (0..size).map(|j| v_t[(idx, j)].conj()).collect();
        // reflector mapping e1 onto the span of v
        let phase = if v[0].norm() == 0.0 {
            c64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let mut w = v;
        w[0] += phase;
        let (t, u) = (&mut s.t, &mut s.u);
        reflect_similarity(t, u, k, &w);
        for i in k + 1..end {
            t[(i, k)] = c64::new(0.0, 0.0);
        }
    }
    for p in start..end {
        s.t[(p, p)] = mean;
    }
    s.t.zero_lower();
}
