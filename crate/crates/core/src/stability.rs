//! Perturbation experiment: how canonical families move when one entry of a
//! triangular matrix is perturbed, compared against a positive-real baseline
//! normalization.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::canonical::{family_with, FamilyOptions};
use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

/// The 4x4 test matrix with `i` above the diagonal, diagonal `1, 2, 3, 4` and
/// `eps` in position `(3, 4)` (one-based).
pub fn builtin_a4(eps: c64) -> ComplexMatrix {
    let i = c64::new(0.0, 1.0);
    let z = c64::new(0.0, 0.0);
    let one = |x: f64| c64::new(x, 0.0);
    ComplexMatrix::from_row_slice(
        4,
        &[
            one(1.0), i, i, i, //
            z, one(2.0), i, i, //
            z, z, one(3.0), eps, //
            z, z, z, one(4.0),
        ],
    )
    .expect("builtin matrix is valid")
}

/// Baseline normal form that makes as many strictly upper entries positive real
/// as a diagonal unitary similarity allows, superdiagonal first.
///
/// Entries are visited by increasing distance from the diagonal, then by row;
/// an entry is normalized whenever its two indices are not yet linked through
/// previously normalized entries.
pub fn baseline_normalize(t: &ComplexMatrix, tol_zero: f64) -> ComplexMatrix {
    let n = t.n();
    let max = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| t[(i, j)].norm())
        .fold(0.0, f64::max);
    let mut theta = vec![0.0f64; n];
    let mut comp: Vec<usize> = (0..n).collect();
    for d in 1..n {
        for i in 0..n - d {
            let j = i + d;
            let z = t[(i, j)];
            if z.norm() <= tol_zero * max || z.norm() == 0.0 || comp[i] == comp[j] {
                continue;
            }
            // shift j's component so that theta_i − theta_j = −arg z
            let delta = theta[i] - theta[j] + z.arg();
            let (from, to) = (comp[j], comp[i]);
            for k in 0..n {
                if comp[k] == from {
                    theta[k] += delta;
                    comp[k] = to;
                }
            }
        }
    }
    let last = theta[n - 1];
    let phase: Vec<c64> = theta.iter().map(|&th| c64::from_polar(1.0, th - last)).collect();
    ComplexMatrix::from_fn(n, |i, j| {
        if i <= j {
            t[(i, j)] * phase[i] * phase[j].conj()
        } else {
            t[(i, j)]
        }
    })
}

/// Two-sided Hausdorff distance between finite sets of matrices under the
/// Frobenius norm.
pub fn hausdorff_distance(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let directed = |x: &[ComplexMatrix], y: &[ComplexMatrix]| -> f64 {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).frobenius_norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityRow {
    pub epsilon: [f64; 2],
    pub magnitude: f64,
    pub family_distance: f64,
    /// `family_distance / |ε|`; absent for `ε = 0`.
    pub ratio: Option<f64>,
    pub baseline_distance: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    /// One-based entry position.
    pub entry: [usize; 2],
    /// Argument of ε in radians.
    pub argument: f64,
    /// Rows by strictly decreasing `|ε|`.
    pub rows: Vec<StabilityRow>,
}

/// Family distance between `base` with `entry := ε` and `entry := 0`, for
/// `ε = magnitude · e^{i argument}` over the given magnitudes.
///
/// `entry` is zero-based and must lie strictly above the diagonal of the
/// upper triangular `base`.
pub fn perturbation_experiment(
    base: &ComplexMatrix,
    entry: (usize, usize),
    magnitudes: &[f64],
    argument: f64,
    with_baseline: bool,
    opts: &FamilyOptions,
) -> Result<StabilityReport> {
    let n = base.n();
    let (i, j) = entry;
    if !(i < j && j < n) {
        return Err(Error::InvalidArgument(format!(
            "entry ({}, {}) is not strictly upper triangular for n = {n}",
            i + 1,
            j + 1
        )));
    }
    if !base.is_upper_triangular() {
        return Err(Error::InvalidArgument("perturbation base must be upper triangular".into()));
    }
    if magnitudes.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
        return Err(Error::InvalidArgument("magnitudes must be finite and nonnegative".into()));
    }
    let mut mags = magnitudes.to_vec();
    mags.sort_by(|a, b| b.total_cmp(a));
    mags.dedup();

    let with_entry = |eps: c64| {
        let mut t = base.clone();
        t[(i, j)] = eps;
        t
    };
    let reference = with_entry(c64::new(0.0, 0.0));
    let ref_members: Vec<ComplexMatrix> = family_with(&reference, opts)?.members.into_iter().map(|m| m.k).collect();
    let ref_baseline = baseline_normalize(&reference, opts.tol_zero);

    let mut rows = Vec::with_capacity(mags.len());
    for mag in mags {
        let eps = c64::from_polar(mag, argument);
        let perturbed = with_entry(eps);
        let members: Vec<ComplexMatrix> = family_with(&perturbed, opts)?.members.into_iter().map(|m| m.k).collect();
        let family_distance = hausdorff_distance(&members, &ref_members);
        let baseline_distance = with_baseline
            .then(|| (&baseline_normalize(&perturbed, opts.tol_zero) - &ref_baseline).frobenius_norm());
        rows.push(StabilityRow {
            epsilon: [eps.re, eps.im],
            magnitude: mag,
            family_distance,
            ratio: (mag > 0.0).then(|| family_distance / mag),
            baseline_distance,
        });
    }
    Ok(StabilityReport {
        entry: [i + 1, j + 1],
        argument,
        rows,
    })
}

/// Degrees to radians, keeping the common multiples of 90° exact.
pub fn degrees(deg: f64) -> f64 {
    let quarters = deg / 90.0;
    if quarters.fract() == 0.0 && quarters.abs() <= 4.0 {
        quarters * FRAC_PI_2
    } else {
        deg.to_radians()
    }
}
