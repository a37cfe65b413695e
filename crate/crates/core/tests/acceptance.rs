//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nalgebra::SymmetricEigen;
use rand::Rng;

use unitary_similarity::linalg::schur;
use unitary_similarity::canonical::{canonical_member, family, family_intersect, family_size, FamilyOptions};
use unitary_similarity::oracle::generate::{
    gen_nonderogatory_instance, random_diagonal_unitary, random_unitary_from, rng_from_seed, unit_disc,
};
use unitary_similarity::oracle::words::{specht_pearcy_test, TraceVerdict};
use unitary_similarity::phase::{invariant_quantities, weighted_laplacian, PairIndex, PhaseData, PhaseSystem};
use unitary_similarity::similarity::{check_unitary_similarity, Config, Reason};
use unitary_similarity::stability::{baseline_normalize, builtin_a4, perturbation_experiment};
use unitary_similarity::{c64, ComplexMatrix};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// A pair from the round-trip or negative corpus with its verdict.
struct CorpusPair {
    a: ComplexMatrix,
    b: ComplexMatrix,
    n: usize,
    similar: bool,
}

fn spectrum(n: usize, pattern: usize, rng: &mut impl Rng) -> Vec<c64> {
    let mut s: Vec<c64> = (0..n).map(|_| unit_disc(rng) * 3.0).collect();
    match pattern % 3 {
        0 => {}
        1 => s[n - 1] = s[0],
        _ => {
            for k in 1..n.min(3) {
                s[k] = s[0];
            }
        }
    }
    s
}

fn round_trip_corpus() -> Vec<(ComplexMatrix, ComplexMatrix)> {
    (0..200u64)
        .map(|k| {
            let n = 2 + (k % 4) as usize;
            let mut rng = rng_from_seed(1000 + k);
            let spec = spectrum(n, (k / 4) as usize, &mut rng);
            let a = gen_nonderogatory_instance(&spec, 2000 + k).a;
            let u = random_unitary_from(n, &mut rng);
            let b = a.conjugated_by(&u);
            (a, b)
        })
        .collect()
}

fn negative_corpus() -> Vec<(ComplexMatrix, ComplexMatrix)> {
    (0..50u64)
        .map(|k| {
            let n = 2 + (k % 4) as usize;
            let mut rng = rng_from_seed(5000 + k);
            let spec = spectrum(n, (k / 4) as usize, &mut rng);
            let inst = gen_nonderogatory_instance(&spec, 6000 + k);
            let i = rng.random_range(0..n - 1);
            let j = rng.random_range(i + 1..n);
            let mut t = inst.t.clone();
            let z = t[(i, j)];
            t[(i, j)] = if z.norm() > 0.0 {
                z * ((z.norm() + 0.1) / z.norm())
            } else {
                c64::new(0.1, 0.0)
            };
            let b = t.conjugated_by(&random_unitary_from(n, &mut rng));
            (inst.a, b)
        })
        .collect()
}

fn criterion_1(corpus: &mut Vec<CorpusPair>) -> Outcome {
    let cfg = Config::default();
    let start = Instant::now();
    let mut failures = 0;
    let mut worst = 0.0f64;
    for (a, b) in round_trip_corpus() {
        let v = check_unitary_similarity(&a, &b, &cfg).expect("round-trip pair");
        let ok = v.similar
            && v.certificate
                .as_ref()
                .is_some_and(|u| (&b - &a.conjugated_by(u)).frobenius_norm() <= 1e-7 * a.frobenius_norm());
        if ok {
            worst = worst.max(v.residual.unwrap());
        } else {
            failures += 1;
        }
        let n = a.n();
        corpus.push(CorpusPair { a, b, n, similar: v.similar });
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failures == 0 && secs <= 60.0,
        format!("200 pairs, {failures} failures, worst residual {worst:.2e}, {secs:.1} s"),
    )
}

fn criterion_2(corpus: &mut Vec<CorpusPair>) -> Outcome {
    let cfg = Config::default();
    let mut similar = 0;
    let mut reasons = std::collections::BTreeMap::new();
    for (a, b) in negative_corpus() {
        let v = check_unitary_similarity(&a, &b, &cfg).expect("negative pair");
        if v.similar {
            similar += 1;
        }
        *reasons.entry(v.reason.to_string()).or_insert(0) += 1;
        let n = a.n();
        corpus.push(CorpusPair { a, b, n, similar: v.similar });
    }
    outcome(similar == 0, format!("50 pairs, {similar} declared Similar, reasons {reasons:?}"))
}

fn random_phase_data(n: usize, sparsity: f64, rng: &mut impl Rng) -> PhaseData {
    let pairs = PairIndex::new(n);
    let mut r = Vec::new();
    let mut phi = Vec::new();
    let mut zero_mask = Vec::new();
    for _ in 0..pairs.len() {
        let zero = rng.random::<f64>() < sparsity;
        r.push(if zero { 0.0 } else { rng.random::<f64>() * 2.0 });
        phi.push(if zero { 0.0 } else { rng.random_range(-PI..PI) });
        zero_mask.push(zero);
    }
    PhaseData { pairs, r, phi, zero_mask }
}

fn criterion_3() -> Outcome {
    let mut rng = rng_from_seed(31);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..1000 {
        let n = 2 + k % 7;
        let data = random_phase_data(n, rng.random::<f64>() * 0.6, &mut rng);
        let m: Vec<i32> = (0..data.pairs.len()).map(|_| rng.random_range(-1..=1)).collect();
        let system = PhaseSystem::new(data.clone()).expect("phase system");
        let rhs = system.rhs(&m);
        let ok = match system.solve(&m) {
            Ok(sol) => {
                let r = weighted_laplacian(data.pairs, &data.r).unwrap();
                let psi = nalgebra::DVector::from_vec(sol.psi);
                let res = (r * psi + &rhs).norm();
                let rel = res / (1.0 + rhs.norm());
                worst = worst.max(rel);
                rel <= 1e-10
            }
            Err(_) => false,
        };
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("1000 instances, {failures} failures, worst relative residual {worst:.2e}"))
}

/// Magnitudes where nodes in `island` have no edges to the rest, so the
/// grounded Laplacian is singular.
fn singular_phase_data(n: usize, rng: &mut impl Rng) -> PhaseData {
    let mut data = random_phase_data(n, 0.2, rng);
    let size = rng.random_range(1..n);
    let mut nodes: Vec<usize> = (0..n - 1).collect();
    for k in (1..nodes.len()).rev() {
        nodes.swap(k, rng.random_range(0..=k));
    }
    let island = &nodes[..size.min(n - 1)];
    for (k, (i, j)) in data.pairs.pairs().enumerate() {
        if island.contains(&i) != island.contains(&j) {
            data.r[k] = 0.0;
            data.phi[k] = 0.0;
            data.zero_mask[k] = true;
        }
    }
    data
}

fn criterion_4() -> Outcome {
    let mut rng = rng_from_seed(41);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..100 {
        let n = 2 + k % 7;
        let data = singular_phase_data(n, &mut rng);
        let system = PhaseSystem::new(data.clone()).unwrap();
        let null = system.solver().null_space().to_vec();
        let m: Vec<i32> = (0..data.pairs.len()).map(|_| rng.random_range(-1..=1)).collect();
        let Ok(sol) = system.solve(&m) else {
            failures += 1;
            continue;
        };
        if null.is_empty() {
            failures += 1;
            continue;
        }
        let mut psi = sol.psi.clone();
        for v in &null {
            let c = rng.random_range(-10.0..10.0);
            for (p, x) in psi.iter_mut().zip(v.iter()) {
                *p += c * x;
            }
        }
        let f2 = invariant_quantities(data.pairs, &data.r, &psi);
        let gap = sol.f.iter().zip(&f2).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst = worst.max(gap);
        if gap > 1e-10 {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("100 singular instances, {failures} failures, worst |f gap| {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(51);
    let mut worst = 0.0f64;
    let mut failures = 0;
    for k in 0..500 {
        let n = 2 + k % 9;
        let data = random_phase_data(n, rng.random::<f64>() * 0.7, &mut rng);
        let scale = 10f64.powi(rng.random_range(-3..=3));
        let w: Vec<f64> = data.r.iter().map(|x| x * scale).collect();
        let r = weighted_laplacian(data.pairs, &w).unwrap();
        let eig = SymmetricEigen::new(r).eigenvalues;
        let norm = eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        if norm > 0.0 {
            worst = worst.min(min / norm);
        }
        if min < -1e-12 * norm {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("500 instances, {failures} failures, lowest min eigenvalue / norm {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = rng_from_seed(61);
    let mut misses = 0;
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = 2 + k % 4;
        let t = ComplexMatrix::from_fn(n, |i, j| if i <= j { unit_disc(&mut rng) * 2.0 } else { c64::new(0.0, 0.0) });
        let x = random_diagonal_unitary(n, &mut rng);
        let mut t2 = t.conjugated_by(&x);
        t2.zero_lower();
        let f1 = family(&t).unwrap();
        let f2 = family(&t2).unwrap();
        match family_intersect(&f1, &f2, 1e-6) {
            Some(hit) => worst = worst.max(hit.distance),
            None => misses += 1,
        }
    }
    let mut sizes_ok = true;
    let mut sizes = Vec::new();
    for n in 2..=6usize {
        let t = ComplexMatrix::from_fn(n, |i, j| if i <= j { unit_disc(&mut rng) + c64::new(i as f64, 0.0) } else { c64::new(0.0, 0.0) });
        let expected = 3usize.pow(((n - 1) * (n - 2) / 2) as u32);
        let got = family(&t).unwrap().len();
        sizes_ok &= got == expected && family_size(n) == expected;
        sizes.push(got);
    }
    outcome(
        misses == 0 && sizes_ok,
        format!("100 pairs, {misses} misses, worst match distance {worst:.2e}; sizes n=2..6 {sizes:?}"),
    )
}

fn criterion_7() -> Outcome {
    let base = builtin_a4(c64::new(0.0, 0.0));
    let opts = FamilyOptions::default();
    let mut pass = true;
    let mut worst_ratio = 0.0f64;
    let mut min_baseline_pi = f64::INFINITY;
    for arg in [0.0, PI / 2.0, PI] {
        let report = perturbation_experiment(&base, (2, 3), &[1e-2, 1e-4, 1e-6], arg, true, &opts).unwrap();
        for row in &report.rows {
            let ratio = row.family_distance / row.magnitude;
            worst_ratio = worst_ratio.max(ratio);
            pass &= row.family_distance <= 10.0 * row.magnitude;
            if arg == PI {
                let b = row.baseline_distance.unwrap();
                min_baseline_pi = min_baseline_pi.min(b);
                pass &= b >= 0.1;
            }
        }
    }
    debug_assert!(baseline_normalize(&base, 1e-12).is_upper_triangular());
    outcome(
        pass,
        format!("worst family distance / |eps| {worst_ratio:.3} (bound 10), smallest baseline distance at arg pi {min_baseline_pi:.3} (bound 0.1)"),
    )
}

fn criterion_8(corpus: &[CorpusPair]) -> Outcome {
    let mut false_refutations = 0;
    let mut checked = 0;
    for p in corpus.iter().filter(|p| p.similar) {
        let len = if p.n <= 3 { 18 } else { 8 };
        checked += 1;
        if specht_pearcy_test(&p.a, &p.b, len).unwrap().is_refuted() {
            false_refutations += 1;
        }
    }
    let cfg = Config::default();
    let mut mismatched = 0;
    let mut missed = 0;
    for (k, p) in corpus.iter().enumerate() {
        let mut rng = rng_from_seed(8000 + k as u64);
        let s = schur(&p.a).unwrap();
        let mut t = s.t.clone();
        t[(p.n - 1, p.n - 1)] += c64::new(0.25 + rng.random::<f64>(), 0.0);
        let shifted = t.conjugated_by(&s.u).conjugated_by(&random_unitary_from(p.n, &mut rng));
        mismatched += 1;
        let v = check_unitary_similarity(&p.a, &shifted, &cfg).unwrap();
        let refuted = matches!(specht_pearcy_test(&p.a, &shifted, 1).unwrap(), TraceVerdict::Refuted { .. });
        if v.reason != Reason::SpectraMismatch || !refuted {
            missed += 1;
        }
    }
    outcome(
        false_refutations == 0 && missed == 0,
        format!(
            "{checked} Similar pairs with {false_refutations} refuted; {mismatched} spectra-mismatched pairs with {missed} not refuted at L = 1"
        ),
    )
}

fn criterion_9() -> Outcome {
    let i = c64::new(0.0, 1.0);
    let one = c64::new(1.0, 0.0);
    let zero = c64::new(0.0, 0.0);
    let t = ComplexMatrix::from_row_slice(2, &[one, i, zero, one * 2.0]).unwrap();
    let k = canonical_member(&t, &[0]).unwrap().k;
    let expected = ComplexMatrix::from_row_slice(2, &[one, -one, zero, one * 2.0]).unwrap();
    let gap = k.max_abs_diff(&expected);

    let mut rng = rng_from_seed(91);
    let mut diag_gap = 0.0f64;
    for n in 1..=5 {
        let d: Vec<c64> = (0..n).map(|_| unit_disc(&mut rng) * 4.0).collect();
        let dm = ComplexMatrix::from_diagonal(&d);
        for mem in &family(&dm).unwrap().members {
            diag_gap = diag_gap.max(mem.k.max_abs_diff(&dm));
        }
    }
    outcome(
        gap <= 1e-12 && diag_gap <= 1e-12,
        format!("2x2 member off by {gap:.1e}; diagonal families off by {diag_gap:.1e}"),
    )
}

fn main() -> ExitCode {
    let mut corpus = Vec::new();
    let results = [
        ("1 round-trip similarity", criterion_1(&mut corpus)),
        ("2 negative detection", criterion_2(&mut corpus)),
        ("3 phase-solve consistency", criterion_3()),
        ("4 uniqueness of f", criterion_4()),
        ("5 R(r) positive semidefinite", criterion_5()),
        ("6 family intersection and sizes", criterion_6()),
        ("7 perturbation stability", criterion_7()),
        ("8 trace oracle agreement", criterion_8(&corpus)),
        ("9 hand-derived exactness", criterion_9()),
    ];
    let mut all = true;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        all &= o.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
