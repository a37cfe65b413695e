//! Build the canonical family of a triangular matrix and intersect it with the
//! family of a diagonal-unitary conjugate.

use unitary_similarity::canonical::{canonical_member, family, family_intersect};
use unitary_similarity::oracle::generate::{random_diagonal_unitary, rng_from_seed};
use unitary_similarity::{c64, ComplexMatrix};

fn main() -> unitary_similarity::Result<()> {
    let one = c64::new(1.0, 0.0);
    let i = c64::new(0.0, 1.0);
    let z = c64::new(0.0, 0.0);

    let t2 = ComplexMatrix::from_row_slice(2, &[one, i, z, one * 2.0])?;
    println!("K([[1, i], [0, 2]], 0) = {:?}", canonical_member(&t2, &[0])?.k);

    let t = ComplexMatrix::from_row_slice(
        4,
        &[
            one, i, one * 0.5 - i, i * 2.0, //
            z, one * 2.0, one + i, one * -0.3, //
            z, z, one * 3.0, i * 0.7, //
            z, z, z, one * 4.0,
        ],
    )?;
    let f = family(&t)?;
    println!("n = 4 family: {} members", f.len());
    for mem in f.members.iter().take(3) {
        println!("  m = {:?}, f = {:?}", mem.m, mem.f.iter().map(|x| (x * 1e6).round() / 1e6).collect::<Vec<_>>());
    }

    let x = random_diagonal_unitary(4, &mut rng_from_seed(5));
    let mut t_conj = t.conjugated_by(&x);
    t_conj.zero_lower();
    let g = family(&t_conj)?;
    match family_intersect(&f, &g, 1e-6) {
        Some(hit) => println!(
            "conjugate shares member: m1 = {:?}, m2 = {:?}, distance {:.2e}",
            f.members[hit.first].m, g.members[hit.second].m, hit.distance
        ),
        None => println!("no common member"),
    }
    Ok(())
}
