//! Canonical members `K(T, m)` and canonical families of triangular matrices.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::psd::DEFAULT_TOL_CONSISTENT;
use crate::matrix::{c64, ComplexMatrix};
use crate::phase::{
    extract_phase, wrap_angle, PairIndex, PhaseData, PhaseSolution, PhaseSystem, DEFAULT_TOL_ZERO,
};

/// Default argument quantum for member keys.
pub const DEFAULT_QUANTUM: f64 = 1e-7;

/// Default relative tolerance for member equality.
pub const DEFAULT_TOL_MATCH: f64 = 1e-6;

/// `X T X*` for the branch vector `m`, with `X = diag(e^{iψ_1}, …, e^{iψ_{n−1}}, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalMember {
    pub k: ComplexMatrix,
    pub m: Vec<i32>,
    pub psi: Vec<f64>,
    pub f: Vec<f64>,
}

impl CanonicalMember {
    /// Diagonal of `X`.
    pub fn phases(&self) -> Vec<c64> {
        self.psi
            .iter()
            .map(|&p| c64::from_polar(1.0, p))
            .chain(std::iter::once(c64::new(1.0, 0.0)))
            .collect()
    }

    /// The diagonal unitary `X`.
    pub fn x(&self) -> ComplexMatrix {
        ComplexMatrix::from_diagonal(&self.phases())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyOptions {
    pub tol_zero: f64,
    pub quantum: f64,
    pub tol_consistent: f64,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        Self {
            tol_zero: DEFAULT_TOL_ZERO,
            quantum: DEFAULT_QUANTUM,
            tol_consistent: DEFAULT_TOL_CONSISTENT,
        }
    }
}

fn require_triangular(t: &ComplexMatrix) -> Result<()> {
    if !t.is_upper_triangular() {
        return Err(Error::InvalidArgument(
            "canonical members are defined for upper triangular matrices".into(),
        ));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn assemble(t: &ComplexMatrix, m: Vec<i32>, sol: PhaseSolution) -> CanonicalMember {
    let n = t.n();
    let phase: Vec<c64> = sol
        .psi
        .iter()
        .map(|&p| c64::from_polar(1.0, p))
        .chain(std::iter::once(c64::new(1.0, 0.0)))
        .collect();
    let k = ComplexMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => t[(i, i)],
        std::cmp::Ordering::Less => t[(i, j)] * phase[i] * phase[j].conj(),
        std::cmp::Ordering::Greater => c64::new(0.0, 0.0),
    });
    CanonicalMember {
        k,
        m,
        psi: sol.psi,
        f: sol.f,
    }
}

/// The canonical member `K(T, m)` with default tolerances.
pub fn canonical_member(t: &ComplexMatrix, m: &[i32]) -> Result<CanonicalMember> {
    canonical_member_with(t, m, &FamilyOptions::default())
}

pub fn canonical_member_with(
    t: &ComplexMatrix,
    m: &[i32],
    opts: &FamilyOptions,
) -> Result<CanonicalMember> {
    require_triangular(t)?;
    let system = PhaseSystem::with_tolerance(extract_phase(t, opts.tol_zero), opts.tol_consistent)?;
    let sol = system.solve(m)?;
    Ok(assemble(t, m.to_vec(), sol))
}

/// `3^((n−1)(n−2)/2)`, saturating.
pub fn family_size(n: usize) -> usize {
    let free = n.saturating_sub(1) * n.saturating_sub(2) / 2;
    3usize.checked_pow(free as u32).unwrap_or(usize::MAX)
}

/// All branch vectors with entries in `{−1, 0, 1}` on pairs `(i, j)`, `j < n−1`,
/// and `0` in the last column.
///
/// Mixed-radix order: the last free pair varies fastest, digits run `−1, 0, 1`.
pub fn branch_vectors(n: usize) -> BranchVectors {
    let pairs = PairIndex::new(n);
    let free: Vec<usize> = pairs
        .pairs()
        .enumerate()
        .filter(|&(_, (i, j))| pairs.is_free(i, j))
        .map(|(k, _)| k)
        .collect();
    let mut current = vec![0i32; pairs.len()];
    for &k in &free {
        current[k] = -1;
    }
    BranchVectors {
        free,
        current: Some(current),
    }
}

#[derive(Clone, Debug)]
pub struct BranchVectors {
    free: Vec<usize>,
    current: Option<Vec<i32>>,
}

impl Iterator for BranchVectors {
    type Item = Vec<i32>;

    fn next(&mut self) -> Option<Vec<i32>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut carry = true;
        for &k in self.free.iter().rev() {
            if next[k] < 1 {
                next[k] += 1;
                carry = false;
                break;
            }
            next[k] = -1;
        }
        if !carry {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All canonical members of a triangular matrix, sorted by [`member_key`].
#[derive(Clone, Debug)]
pub struct CanonicalFamily {
    pub members: Vec<CanonicalMember>,
    pub source: ComplexMatrix,
    pub phase: PhaseData,
    pub quantum: f64,
}

impl CanonicalFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    /// The member for `m = 0`.
    pub fn base_member(&self) -> &CanonicalMember {
        self.members
            .iter()
            .find(|mem| mem.m.iter().all(|&x| x == 0))
            .expect("m = 0 belongs to every family")
    }
}

pub fn family(t: &ComplexMatrix) -> Result<CanonicalFamily> {
    family_with(t, &FamilyOptions::default())
}

pub fn family_with(t: &ComplexMatrix, opts: &FamilyOptions) -> Result<CanonicalFamily> {
    require_triangular(t)?;
    let phase = extract_phase(t, opts.tol_zero);
    let system = PhaseSystem::with_tolerance(phase.clone(), opts.tol_consistent)?;
    let mut keyed = Vec::with_capacity(family_size(t.n()));
    for m in branch_vectors(t.n()) {
        let sol = system.solve(&m)?;
        let member = assemble(t, m, sol);
        let key = member_key(&member, &phase.zero_mask, opts.quantum);
        keyed.push((key, member));
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(CanonicalFamily {
        members: keyed.into_iter().map(|(_, m)| m).collect(),
        source: t.clone(),
        phase,
        quantum: opts.quantum,
    })
}

/// Shifted argument `arg z − π` of an entry, in `[−π, π)`.
fn shifted_arg(z: c64) -> f64 {
    wrap_angle(z.arg() - PI)
}

/// Quantized shifted arguments of the unmasked strictly upper entries, in pair order.
pub fn member_key(member: &CanonicalMember, zero_mask: &[bool], quantum: f64) -> Vec<i64> {
    let pairs = PairIndex::new(member.k.n());
    pairs
        .pairs()
        .zip(zero_mask)
        .filter(|(_, &masked)| !masked)
        .map(|((i, j), _)| (shifted_arg(member.k[(i, j)]) / quantum).floor() as i64)
        .collect()
}

/// Largest entrywise distance between two members; positions masked in either
/// family are compared by magnitude only.
pub fn member_distance(a: &ComplexMatrix, b: &ComplexMatrix, mask_a: &[bool], mask_b: &[bool]) -> f64 {
    let n = a.n();
    let pairs = PairIndex::new(n);
    let mut worst = (0..n).map(|i| (a[(i, i)] - b[(i, i)]).norm()).fold(0.0, f64::max);
    for (k, (i, j)) in pairs.pairs().enumerate() {
        let d = if mask_a[k] || mask_b[k] {
            (a[(i, j)].norm() - b[(i, j)].norm()).abs()
        } else {
            (a[(i, j)] - b[(i, j)]).norm()
        };
        worst = worst.max(d);
    }
    worst
}

/// A pair of coinciding members, by index into each family's `members`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyMatch {
    pub first: usize,
    pub second: usize,
    pub distance: f64,
}

/// Finds the closest pair of members within `tol_match · max ‖T‖_F`.
///
/// Members are bucketed by the argument of the largest common entry, with a
/// bucket width no narrower than the tolerance allows for that entry; each
/// member of `f1` probes its own bucket and both circular neighbours in `f2`.
pub fn family_intersect(f1: &CanonicalFamily, f2: &CanonicalFamily, tol_match: f64) -> Option<FamilyMatch> {
    if f1.n() != f2.n() || f1.is_empty() || f2.is_empty() {
        return None;
    }
    let scale = f1.source.frobenius_norm().max(f2.source.frobenius_norm());
    let bound = tol_match * scale;
    let m1 = &f1.phase.zero_mask;
    let m2 = &f2.phase.zero_mask;
    let pairs = PairIndex::new(f1.n());

    let probe = pairs
        .pairs()
        .enumerate()
        .filter(|(k, _)| !m1[*k] && !m2[*k])
        .max_by(|a, b| f1.phase.r[a.0].total_cmp(&f1.phase.r[b.0]))
        .map(|(k, (i, j))| (k, i, j));

    let Some((k, i, j)) = probe else {
        // nothing to probe on: every member equals its source up to masked phases
        let d = member_distance(&f1.members[0].k, &f2.members[0].k, m1, m2);
        return (d <= bound).then_some(FamilyMatch {
            first: 0,
            second: 0,
            distance: d,
        });
    };

    let r = f1.phase.r[k].min(f2.phase.r[k]).max(f64::MIN_POSITIVE);
    let width = f1.quantum.max(f2.quantum).max(2.0 * bound / r);
    let buckets = ((2.0 * PI) / width).ceil().max(1.0) as i64;
    let bucket = |mem: &CanonicalMember| -> i64 {
        let a = shifted_arg(mem.k[(i, j)]) + PI;
        ((a / width).floor() as i64).clamp(0, buckets - 1)
    };

    let mut index: Vec<(i64, usize)> = f2.members.iter().enumerate().map(|(s, m)| (bucket(m), s)).collect();
    index.sort_unstable();

    let mut best: Option<FamilyMatch> = None;
    for (first, mem) in f1.members.iter().enumerate() {
        let b = bucket(mem);
        let mut probes = vec![b, (b - 1).rem_euclid(buckets), (b + 1).rem_euclid(buckets)];
        probes.sort_unstable();
        probes.dedup();
        for p in probes {
            let lo = index.partition_point(|&(key, _)| key < p);
            for &(key, second) in &index[lo..] {
                if key != p {
                    break;
                }
                let d = member_distance(&mem.k, &f2.members[second].k, m1, m2);
                if d <= bound && best.is_none_or(|cur| d < cur.distance) {
                    best = Some(FamilyMatch {
                        first,
                        second,
                        distance: d,
                    });
                }
            }
        }
    }
    best
}
