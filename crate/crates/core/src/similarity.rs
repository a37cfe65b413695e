//! The end-to-end unitary similarity decision with certificate recovery.

use std::fmt;

use crate::canonical::{family_intersect, family_size, family_with, FamilyOptions, DEFAULT_QUANTUM, DEFAULT_TOL_MATCH};
use crate::error::{Error, Result};
use crate::linalg::cluster::{cluster_and_order_defective, SpectrumClustering};
use crate::linalg::psd::DEFAULT_TOL_CONSISTENT;
use crate::linalg::reorder::reorder_by_rank;
use crate::linalg::schur::{schur_with_budget, SchurForm};
use crate::linalg::structure::{margin_at, settle_cluster_blocks, DEFAULT_TOL_CLUSTER, DEFAULT_TOL_RANK};
use crate::matrix::{c64, ComplexMatrix};
use crate::phase::{PairIndex, DEFAULT_TOL_ZERO};

/// Tolerances and limits for [`check_unitary_similarity`]. All tolerances are
/// relative to `max(‖A‖_F, ‖B‖_F)` unless noted.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub tol_cluster: f64,
    /// Relative to `‖T‖_F` of each Schur form.
    pub tol_rank: f64,
    /// Relative to the largest off-diagonal magnitude.
    pub tol_zero: f64,
    pub tol_match: f64,
    /// Bound on `‖B − U A U*‖_F / ‖A‖_F`.
    pub tol_certificate: f64,
    pub tol_consistent: f64,
    pub quantum: f64,
    /// QR sweeps allowed per eigenvalue; `None` means `30 n`.
    pub max_qr_iter: Option<usize>,
    pub max_n_family: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol_cluster: DEFAULT_TOL_CLUSTER,
            tol_rank: DEFAULT_TOL_RANK,
            tol_zero: DEFAULT_TOL_ZERO,
            tol_match: DEFAULT_TOL_MATCH,
            tol_certificate: 1e-7,
            tol_consistent: DEFAULT_TOL_CONSISTENT,
            quantum: DEFAULT_QUANTUM,
            max_qr_iter: None,
            max_n_family: 6,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let tols = [
            ("tol_cluster", self.tol_cluster),
            ("tol_rank", self.tol_rank),
            ("tol_zero", self.tol_zero),
            ("tol_match", self.tol_match),
            ("tol_certificate", self.tol_certificate),
            ("tol_consistent", self.tol_consistent),
            ("quantum", self.quantum),
        ];
        for (name, value) in tols {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {value}")));
            }
        }
        Ok(())
    }

    fn family_options(&self) -> FamilyOptions {
        FamilyOptions {
            tol_zero: self.tol_zero,
            quantum: self.quantum,
            tol_consistent: self.tol_consistent,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    SpectraMismatch,
    NotNonderogatory,
    MagnitudeMismatch,
    NoFamilyIntersection,
    Similar,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::SpectraMismatch => "SpectraMismatch",
            Reason::NotNonderogatory => "NotNonderogatory",
            Reason::MagnitudeMismatch => "MagnitudeMismatch",
            Reason::NoFamilyIntersection => "NoFamilyIntersection",
            Reason::Similar => "Similar",
        };
        f.write_str(s)
    }
}

/// Outcome of [`check_unitary_similarity`].
///
/// `similar` holds exactly when `reason == Similar`, and then the certificate is
/// present with `residual ≤ tol_certificate`.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub similar: bool,
    pub reason: Reason,
    /// Branch vectors of the coinciding members of the two families.
    pub witnesses: Option<(Vec<i32>, Vec<i32>)>,
    /// `U` with `B = U A U*`.
    pub certificate: Option<ComplexMatrix>,
    /// `‖B − U A U*‖_F / ‖A‖_F`.
    pub residual: Option<f64>,
    /// Smaller of the two rank margins `σ_{n−1}(T − λI) / ‖T‖_F`, when measured.
    pub nonderogatory_margin: Option<f64>,
    /// Largest `| |Δ¹_ij| − |Δ²_ij| |`, when measured.
    pub magnitude_gap: Option<f64>,
}

impl Verdict {
    fn rejected(reason: Reason) -> Self {
        Self {
            similar: false,
            reason,
            witnesses: None,
            certificate: None,
            residual: None,
            nonderogatory_margin: None,
            magnitude_gap: None,
        }
    }
}

/// `‖B − U A U*‖_F / ‖A‖_F` (absolute when `A = 0`).
pub fn certificate_residual(a: &ComplexMatrix, b: &ComplexMatrix, u: &ComplexMatrix) -> f64 {
    let diff = (b - &a.conjugated_by(u)).frobenius_norm();
    let norm = a.frobenius_norm();
    if norm == 0.0 {
        diff
    } else {
        diff / norm
    }
}

/// Schur forms of both inputs brought to the shared canonical eigenvalue order,
/// with repeated-eigenvalue blocks re-triangularized.
#[derive(Clone, Debug)]
pub struct AlignedSchur {
    pub first: SchurForm,
    pub second: SchurForm,
    pub clustering: SpectrumClustering,
}

/// Steps (1)–(3) of the decision: Schur reduction, joint clustering, reordering.
pub fn align_schur_forms(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &Config) -> Result<AlignedSchur> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    let budget = cfg.max_qr_iter.unwrap_or(30 * a.n());
    let sa = schur_with_budget(a, budget)?;
    let sb = schur_with_budget(b, budget)?;
    let scale = a.frobenius_norm().max(b.frobenius_norm());
    let (clustering, _) =
        cluster_and_order_defective(&sa.order, &sb.order, cfg.tol_cluster * scale, scale)?;
    let first = align_one(&sa, clustering.assignment(0));
    let second = align_one(&sb, clustering.assignment(1));
    Ok(AlignedSchur {
        first,
        second,
        clustering,
    })
}

/// Schur form of a single matrix in canonical eigenvalue order.
pub fn canonical_schur(a: &ComplexMatrix, cfg: &Config) -> Result<SchurForm> {
    Ok(align_schur_forms(a, a, cfg)?.first)
}

fn align_one(s: &SchurForm, cluster_of: &[usize]) -> SchurForm {
    let sorted = reorder_by_rank(s, cluster_of);
    let mut ids = cluster_of.to_vec();
    ids.sort_unstable();
    settle_cluster_blocks(&sorted, &ids)
}

fn magnitude_gap(t1: &ComplexMatrix, t2: &ComplexMatrix) -> f64 {
    PairIndex::new(t1.n())
        .pairs()
        .map(|(i, j)| (t1[(i, j)].norm() - t2[(i, j)].norm()).abs())
        .fold(0.0, f64::max)
}

/// Decides whether `B = U A U*` for some unitary `U`, for nonderogatory inputs.
///
/// Errors are reserved for invalid input, QR non-convergence and refusing an
/// oversized family; every mathematical outcome is a [`Verdict`].
pub fn check_unitary_similarity(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &Config) -> Result<Verdict> {
    cfg.validate()?;
    let aligned = match align_schur_forms(a, b, cfg) {
        Ok(x) => x,
        Err(Error::SpectraMismatch) => return Ok(Verdict::rejected(Reason::SpectraMismatch)),
        Err(e) => return Err(e),
    };
    let (s1, s2) = (&aligned.first, &aligned.second);
    let reps: Vec<c64> = aligned.clustering.clusters.iter().map(|c| c.representative).collect();

    let margin = margin_at(&s1.t, &reps).min(margin_at(&s2.t, &reps));
    if margin.is_nan() || margin <= cfg.tol_rank {
        let mut v = Verdict::rejected(Reason::NotNonderogatory);
        v.nonderogatory_margin = Some(margin);
        return Ok(v);
    }

    let scale = a.frobenius_norm().max(b.frobenius_norm());
    let gap = magnitude_gap(&s1.t, &s2.t);
    if gap > 10.0 * cfg.tol_match * scale {
        let mut v = Verdict::rejected(Reason::MagnitudeMismatch);
        v.nonderogatory_margin = Some(margin);
        v.magnitude_gap = Some(gap);
        return Ok(v);
    }

    let n = a.n();
    if n > cfg.max_n_family {
        return Err(Error::FamilyTooLarge {
            n,
            max: cfg.max_n_family,
        });
    }
    debug_assert!(family_size(n) < usize::MAX);
    let opts = cfg.family_options();
    let f1 = family_with(&s1.t, &opts)?;
    let f2 = family_with(&s2.t, &opts)?;

    let mut verdict = Verdict::rejected(Reason::NoFamilyIntersection);
    verdict.nonderogatory_margin = Some(margin);
    verdict.magnitude_gap = Some(gap);
    let Some(hit) = family_intersect(&f1, &f2, cfg.tol_match) else {
        return Ok(verdict);
    };

    // K1 = X1 T1 X1*, K2 = X2 T2 X2*, T1 = U_A* A U_A, T2 = U_B* B U_B
    let m1 = &f1.members[hit.first];
    let m2 = &f2.members[hit.second];
    let u = &(&(&s2.u * &m2.x().adjoint()) * &m1.x()) * &s1.u.adjoint();
    let residual = certificate_residual(a, b, &u);
    verdict.witnesses = Some((m1.m.clone(), m2.m.clone()));
    verdict.residual = Some(residual);
    if residual <= cfg.tol_certificate {
        verdict.similar = true;
        verdict.reason = Reason::Similar;
        verdict.certificate = Some(u);
    }
    Ok(verdict)
}
