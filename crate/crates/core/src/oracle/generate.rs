//! Seeded random test instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::schur::SchurForm;
use crate::linalg::structure::{is_nonderogatory, DEFAULT_TOL_RANK};
use crate::matrix::{c64, ComplexMatrix};

/// The seeded generator used by every function in this module.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> c64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Uniform point in the closed unit disc.
pub fn unit_disc(rng: &mut impl Rng) -> c64 {
    let radius = rng.random::<f64>().sqrt();
    let angle = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
    c64::from_polar(radius, angle)
}

/// Haar-distributed unitary drawn from `rng`.
///
/// Gram–Schmidt (applied twice) on a complex Gaussian matrix; normalizing each
/// column leaves the triangular factor with a positive diagonal, which is the
/// phase fix that makes the distribution Haar.
pub fn random_unitary_from(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(n > 0);
    let mut cols: Vec<Vec<c64>> = (0..n).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
    for j in 0..n {
        let (done, rest) = cols.split_at_mut(j);
        let col = &mut rest[0];
        for _ in 0..2 {
            for prev in done.iter() {
                let dot: c64 = prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
                for (c, p) in col.iter_mut().zip(prev) {
                    *c -= dot * p;
                }
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in col.iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Haar-distributed unitary for a fixed seed.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_unitary_from(n, &mut rng_from_seed(seed))
}

/// Diagonal unitary with uniformly random phases.
pub fn random_diagonal_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let d: Vec<c64> = (0..n)
        .map(|_| c64::from_polar(1.0, rng.random::<f64>() * 2.0 * std::f64::consts::PI))
        .collect();
    ComplexMatrix::from_diagonal(&d)
}

/// A nonderogatory triangular matrix with the given diagonal, together with the
/// unitary `q` and the result `q t q*`.
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub a: ComplexMatrix,
    pub t: ComplexMatrix,
    pub q: ComplexMatrix,
}

/// Upper triangular `T` with `diag(T) = spectrum`, conjugated by a Haar unitary.
///
/// Strictly upper entries are uniform in the unit disc. Consecutive occurrences
/// of a repeated eigenvalue are coupled by an entry of modulus at least 1/2, so
/// each eigenvalue carries a single Jordan block; draws that still fail the rank
/// test are redrawn.
pub fn gen_nonderogatory_instance(spectrum: &[c64], seed: u64) -> GeneratedInstance {
    let n = spectrum.len();
    assert!(n > 0, "spectrum must be nonempty");
    let mut rng = rng_from_seed(seed);
    loop {
        let mut t = ComplexMatrix::from_diagonal(spectrum);
        for i in 0..n {
            for j in i + 1..n {
                t[(i, j)] = unit_disc(&mut rng);
            }
        }
        for i in 0..n {
            let next = (i + 1..n).find(|&j| (spectrum[j] - spectrum[i]).norm() <= 1e-12);
            if let Some(j) = next {
                let z = unit_disc(&mut rng);
                let radius = 0.5 + 0.5 * z.norm();
                t[(i, j)] = c64::from_polar(radius, z.arg());
            }
        }
        let s = SchurForm {
            order: t.diagonal(),
            u: ComplexMatrix::identity(n),
            t: t.clone(),
        };
        if !is_nonderogatory(&s, DEFAULT_TOL_RANK) {
            continue;
        }
        let q = if n == 1 { ComplexMatrix::identity(1) } else { random_unitary_from(n, &mut rng) };
        let a = t.conjugated_by(&q);
        return GeneratedInstance { a, t, q };
    }
}

/// `q t q*` for a random nonderogatory triangular `t` with the given spectrum.
pub fn gen_nonderogatory(spectrum: &[c64], seed: u64) -> ComplexMatrix {
    gen_nonderogatory_instance(spectrum, seed).a
}
