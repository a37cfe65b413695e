//! Householder reduction to upper Hessenberg form.

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

/// Applies the reflector `P = I − 2 v v* / (v* v)` acting on indices `k..k+v.len()`
/// as the similarity `M ← P M P` and accumulates `Q ← Q P`.
pub(crate) fn reflect_similarity(m: &mut ComplexMatrix, q: &mut ComplexMatrix, k: usize, v: &[c64]) {
    let n = m.n();
    let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if vnorm2 == 0.0 {
        return;
    }
    let tau = 2.0 / vnorm2;
    // left: rows k.., all columns
    for j in 0..n {
        let mut dot = c64::new(0.0, 0.0);
        for (l, vl) in v.iter().enumerate() {
            dot += vl.conj() * m[(k + l, j)];
        }
        let scale = dot * tau;
        for (l, vl) in v.iter().enumerate() {
            m[(k + l, j)] -= vl * scale;
        }
    }
    // right: columns k.., all rows
    for mat in [&mut *m, &mut *q] {
        for i in 0..n {
            let mut dot = c64::new(0.0, 0.0);
            for (l, vl) in v.iter().enumerate() {
                dot += mat[(i, k + l)] * vl;
            }
            let scale = dot * tau;
            for (l, vl) in v.iter().enumerate() {
                mat[(i, k + l)] -= scale * vl.conj();
            }
        }
    }
}

/// Reduces `a` to upper Hessenberg form: returns `(h, q)` with `a = q h q*`.
///
/// Columns whose entries below the first subdiagonal are already exactly zero
/// are skipped, so an upper Hessenberg input comes back unchanged with `q = I`.
pub fn hessenberg(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.n();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        if (k + 2..n).all(|i| h[(i, k)] == c64::new(0.0, 0.0)) {
            continue;
        }
        let x: Vec<c64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phase = if x[0].norm() == 0.0 {
            c64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        reflect_similarity(&mut h, &mut q, k + 1, &v);
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = c64::new(0.0, 0.0);
        }
    }
    Ok((h, q))
}
