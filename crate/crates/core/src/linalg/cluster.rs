//! Joint clustering of computed spectra and the canonical eigenvalue order.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::c64;

/// Prefactor for the defective-eigenvalue slack `scale · (C · n · eps)^(1/m)`.
const DEFECT_SLACK: f64 = 1e3;

#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub representative: c64,
    /// Number of eigenvalues each spectrum contributes to this cluster.
    pub multiplicity: usize,
}

/// Clusters in canonical order plus, for each input spectrum, the cluster id of
/// every entry.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumClustering {
    pub clusters: Vec<Cluster>,
    pub assignments: Vec<Vec<usize>>,
    pub tol_cluster: f64,
}

impl SpectrumClustering {
    /// Representatives repeated by multiplicity, in canonical order.
    pub fn canonical_order(&self) -> Vec<c64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.representative, c.multiplicity))
            .collect()
    }

    /// Cluster id of each entry of spectrum `which`.
    pub fn assignment(&self, which: usize) -> &[usize] {
        &self.assignments[which]
    }
}

/// Ascending lexicographic order on `(re, im)`.
pub fn canonical_cmp(a: &c64, b: &c64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Single-linkage clustering of the union of two spectra at `tol_cluster`.
///
/// Returns the clustering and the shared diagonal order both Schur forms must
/// be brought to. Fails with [`Error::SpectraMismatch`] when a cluster holds a
/// different number of eigenvalues from each spectrum.
pub fn cluster_and_order(
    eigs_a: &[c64],
    eigs_b: &[c64],
    tol_cluster: f64,
) -> Result<(SpectrumClustering, Vec<c64>)> {
    let c = cluster_spectra(&[eigs_a, eigs_b], tol_cluster, 0.0)?;
    let order = c.canonical_order();
    Ok((c, order))
}

/// Like [`cluster_and_order`], but also links eigenvalues that a defective
/// (Jordan) structure of size `m` scatters by up to `scale · (C n eps)^(1/m)`.
pub fn cluster_and_order_defective(
    eigs_a: &[c64],
    eigs_b: &[c64],
    tol_cluster: f64,
    scale: f64,
) -> Result<(SpectrumClustering, Vec<c64>)> {
    let c = cluster_spectra(&[eigs_a, eigs_b], tol_cluster, scale)?;
    let order = c.canonical_order();
    Ok((c, order))
}

/// Clusters any number of spectra of equal length jointly.
///
/// `defect_scale = 0` gives plain single linkage at `tol_cluster`.
pub fn cluster_spectra(
    spectra: &[&[c64]],
    tol_cluster: f64,
    defect_scale: f64,
) -> Result<SpectrumClustering> {
    let n = spectra.first().map_or(0, |s| s.len());
    if let Some(bad) = spectra.iter().find(|s| s.len() != n) {
        return Err(Error::DimensionMismatch(bad.len(), n));
    }
    let k = spectra.len();
    let points: Vec<(usize, c64)> = spectra
        .iter()
        .enumerate()
        .flat_map(|(src, s)| s.iter().map(move |&z| (src, z)))
        .collect();
    let count = |members: &[usize]| -> Vec<usize> {
        let mut c = vec![0; k];
        for &m in members {
            c[points[m].0] += 1;
        }
        c
    };

    // Largest candidate multiplicities first: a size-m Jordan block scatters its
    // computed eigenvalues by about (eps)^(1/m), so each pass uses the slack for m
    // and keeps only components that really hold m eigenvalues per spectrum.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut free: Vec<usize> = (0..points.len()).collect();
    if defect_scale > 0.0 {
        for m in (2..=n).rev() {
            let slack = defect_scale * (DEFECT_SLACK * n as f64 * f64::EPSILON).powf(1.0 / m as f64);
            let threshold = tol_cluster.max(slack);
            let mut rest = Vec::new();
            for comp in components(&points, &free, threshold) {
                if count(&comp).into_iter().max().unwrap_or(0) >= m {
                    groups.push(comp);
                } else {
                    rest.extend(comp);
                }
            }
            rest.sort_unstable();
            free = rest;
        }
    }
    groups.extend(components(&points, &free, tol_cluster));

    // merge groups whose means still sit within tolerance of each other
    let mean = |g: &[usize]| -> c64 { g.iter().map(|&m| points[m].1).sum::<c64>() / g.len() as f64 };
    'merge: loop {
        for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                if (mean(&groups[a]) - mean(&groups[b])).norm() <= tol_cluster {
                    let moved = groups.remove(b);
                    groups[a].extend(moved);
                    continue 'merge;
                }
            }
        }
        break;
    }

    let mut clusters: Vec<(c64, Vec<usize>, usize)> = Vec::with_capacity(groups.len());
    for g in groups {
        let counts = count(&g);
        if counts.iter().any(|&c| c != counts[0]) {
            return Err(Error::SpectraMismatch);
        }
        clusters.push((mean(&g), g, counts[0]));
    }
    clusters.sort_by(|a, b| canonical_cmp(&a.0, &b.0));

    let mut assignments = vec![vec![usize::MAX; n]; k];
    for (id, (_, members, _)) in clusters.iter().enumerate() {
        for &m in members {
            assignments[m / n.max(1)][m % n.max(1)] = id;
        }
    }
    Ok(SpectrumClustering {
        clusters: clusters
            .into_iter()
            .map(|(representative, _, multiplicity)| Cluster {
                representative,
                multiplicity,
            })
            .collect(),
        assignments,
        tol_cluster,
    })
}

/// Connected components of `subset` under `|z_i − z_j| <= threshold`, each
/// sorted, in order of smallest member.
fn components(points: &[(usize, c64)], subset: &[usize], threshold: f64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; subset.len()];
    let mut out = Vec::new();
    for start in 0..subset.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut head = 0;
        while head < comp.len() {
            let cur = comp[head];
            head += 1;
            for other in 0..subset.len() {
                if !seen[other]
                    && (points[subset[cur]].1 - points[subset[other]].1).norm() <= threshold
                {
                    seen[other] = true;
                    comp.push(other);
                }
            }
        }
        let mut members: Vec<usize> = comp.into_iter().map(|c| subset[c]).collect();
        members.sort_unstable();
        out.push(members);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reals(v: &[f64]) -> Vec<c64> {
        v.iter().map(|&x| c64::new(x, 0.0)).collect()
    }

    #[test]
    fn distinct_reals() {
        let e = reals(&[1.0, 2.0, 3.0, 4.0]);
        let (c, order) = cluster_and_order(&e, &e, 1e-8).unwrap();
        assert_eq!(c.clusters.len(), 4);
        assert_eq!(order, e);
    }

    #[test]
    fn multiset_reordering() {
        let (c, order) =
            cluster_and_order(&reals(&[2.0, 2.0, 1.0]), &reals(&[1.0, 2.0, 2.0]), 1e-8).unwrap();
        assert_eq!(order, reals(&[1.0, 2.0, 2.0]));
        assert_eq!(c.assignment(0), &[1, 1, 0]);
        assert_eq!(c.assignment(1), &[0, 1, 1]);
    }

    #[test]
    fn near_equal_pair_forms_one_cluster() {
        let e = vec![c64::new(1.0, 0.0), c64::new(1.0 + 1e-14, 0.0)];
        let (c, _) = cluster_and_order(&e, &e, 1e-10).unwrap();
        assert_eq!(c.clusters.len(), 1);
        assert_eq!(c.clusters[0].multiplicity, 2);
    }

    #[test]
    fn mismatched_multiplicities() {
        let r = cluster_and_order(&reals(&[1.0, 1.0, 2.0]), &reals(&[1.0, 2.0, 2.0]), 1e-8);
        assert!(matches!(r, Err(Error::SpectraMismatch)));
        let r = cluster_and_order(&reals(&[1.0, 2.0]), &reals(&[1.0, 3.0]), 1e-8);
        assert!(matches!(r, Err(Error::SpectraMismatch)));
    }

    #[test]
    fn lexicographic_by_real_then_imaginary() {
        let a = vec![c64::new(1.0, 1.0), c64::new(1.0, -1.0), c64::new(0.0, 5.0)];
        let (_, order) = cluster_and_order(&a, &a, 1e-8).unwrap();
        assert_eq!(order, vec![c64::new(0.0, 5.0), c64::new(1.0, -1.0), c64::new(1.0, 1.0)]);
    }

    #[test]
    fn defect_slack_links_scattered_jordan_eigenvalues() {
        // a size-3 Jordan block perturbed at machine precision scatters by ~1e-5
        let a: Vec<c64> = (0..3)
            .map(|k| c64::from_polar(1.0, 0.0) + c64::from_polar(8e-6, 2.0 * std::f64::consts::PI * k as f64 / 3.0))
            .collect();
        let b: Vec<c64> = (0..3)
            .map(|k| c64::new(1.0, 0.0) + c64::from_polar(7e-6, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / 3.0))
            .collect();
        assert!(cluster_and_order(&a, &b, 1e-8).is_err());
        let (c, _) = cluster_and_order_defective(&a, &b, 1e-8, 3.0).unwrap();
        assert_eq!(c.clusters.len(), 1);
        assert_eq!(c.clusters[0].multiplicity, 3);
    }

    #[test]
    fn representatives_are_separated() {
        let a = reals(&[0.0, 1.0, 1.0 + 1e-12, 3.0]);
        let (c, _) = cluster_and_order(&a, &a, 1e-9).unwrap();
        for i in 0..c.clusters.len() {
            for j in i + 1..c.clusters.len() {
                assert!((c.clusters[i].representative - c.clusters[j].representative).norm() > 1e-9);
            }
        }
    }
}
