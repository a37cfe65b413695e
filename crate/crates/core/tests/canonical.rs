use std::f64::consts::PI;

use proptest::prelude::*;

use unitary_similarity::canonical::{
    branch_vectors, canonical_member, family, family_intersect, family_size, member_distance,
};
use unitary_similarity::phase::{extract_phase, transformed_arguments};
use unitary_similarity::oracle::generate::{random_diagonal_unitary, rng_from_seed, unit_disc};
use unitary_similarity::{c64, ComplexMatrix};

fn triangular(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    ComplexMatrix::from_fn(n, |i, j| if i <= j { unit_disc(&mut rng) * 2.0 } else { c64::new(0.0, 0.0) })
}

fn conjugate_diag(t: &ComplexMatrix, seed: u64) -> ComplexMatrix {
    let x = random_diagonal_unitary(t.n(), &mut rng_from_seed(seed));
    let mut out = t.conjugated_by(&x);
    out.zero_lower();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugates_share_a_member(n in 2usize..6, seed in any::<u64>()) {
        let t = triangular(n, seed);
        let t2 = conjugate_diag(&t, seed ^ 0x5a5a);
        let hit = family_intersect(&family(&t).unwrap(), &family(&t2).unwrap(), 1e-6);
        prop_assert!(hit.is_some());
        prop_assert!(hit.unwrap().distance <= 1e-10);
    }

    #[test]
    fn members_are_diagonal_conjugates(n in 2usize..6, seed in any::<u64>()) {
        let t = triangular(n, seed);
        let f = family(&t).unwrap();
        for mem in &f.members {
            prop_assert!(mem.x().unitarity_residual() < 1e-13);
            let mut back = mem.k.conjugated_by(&mem.x().adjoint());
            back.zero_lower();
            prop_assert!(back.max_abs_diff(&t) <= 1e-12 * t.frobenius_norm());
            for i in 0..n {
                prop_assert_eq!(mem.k[(i, i)], t[(i, i)]);
            }
        }
    }

    #[test]
    fn base_member_is_idempotent(n in 2usize..6, seed in any::<u64>()) {
        let t = triangular(n, seed);
        let zeros = vec![0; n * (n - 1) / 2];
        let base = canonical_member(&t, &zeros).unwrap();
        // unwrapped arguments near ±π wrap around and leave the balanced set
        let phase = extract_phase(&t, 1e-12);
        let unwrapped = transformed_arguments(&phase, &zeros, &base.psi);
        prop_assume!(unwrapped.iter().zip(&phase.zero_mask).all(|(a, &z)| z || a.abs() < PI - 0.1));
        let k = base.k;
        let again = canonical_member(&k, &zeros).unwrap().k;
        prop_assert!(again.max_abs_diff(&k) <= 1e-9);
    }

    #[test]
    fn magnitudes_survive(n in 2usize..6, seed in any::<u64>()) {
        let t = triangular(n, seed);
        for mem in &family(&t).unwrap().members {
            for i in 0..n {
                for j in i..n {
                    prop_assert!((mem.k[(i, j)].norm() - t[(i, j)].norm()).abs() <= 1e-12 * (1.0 + t[(i, j)].norm()));
                }
            }
        }
    }
}

#[test]
fn sizes_follow_the_branch_count() {
    for n in 1..=6 {
        let expected = if n < 3 { 1 } else { 3usize.pow(((n - 1) * (n - 2) / 2) as u32) };
        assert_eq!(family_size(n), expected);
        assert_eq!(branch_vectors(n).count(), expected);
    }
    assert_eq!(family(&triangular(6, 1)).unwrap().len(), 59049);
}

#[test]
fn branch_vectors_leave_the_last_column_alone() {
    let n = 4;
    for m in branch_vectors(n) {
        assert_eq!(m.len(), 6);
        // pairs (0,3), (1,3), (2,3) sit at indices 2, 4, 5
        assert_eq!((m[2], m[4], m[5]), (0, 0, 0));
        assert!(m.iter().all(|x| (-1..=1).contains(x)));
    }
}

#[test]
fn two_by_two_member() {
    let one = c64::new(1.0, 0.0);
    let t = ComplexMatrix::from_row_slice(2, &[one, c64::new(0.0, 1.0), c64::new(0.0, 0.0), one * 2.0]).unwrap();
    let k = canonical_member(&t, &[0]).unwrap().k;
    assert!((k[(0, 1)] - (-one)).norm() <= 1e-12);
    assert_eq!(k[(0, 0)], one);
    assert_eq!(k[(1, 1)], one * 2.0);
}

#[test]
fn different_magnitudes_do_not_match() {
    let t = triangular(4, 9);
    let mut t2 = conjugate_diag(&t, 10);
    t2[(0, 2)] *= 1.1;
    let f1 = family(&t).unwrap();
    let f2 = family(&t2).unwrap();
    assert!(family_intersect(&f1, &f2, 1e-6).is_none());
    let d = member_distance(&f1.members[0].k, &f2.members[0].k, &f1.phase.zero_mask, &f2.phase.zero_mask);
    assert!(d > 1e-3);
}

#[test]
fn masked_entries_compare_by_magnitude() {
    let mut t = triangular(4, 12);
    t[(0, 1)] = c64::new(0.0, 0.0);
    t[(1, 3)] = c64::new(0.0, 0.0);
    let t2 = conjugate_diag(&t, 13);
    assert!(family_intersect(&family(&t).unwrap(), &family(&t2).unwrap(), 1e-6).is_some());
}
