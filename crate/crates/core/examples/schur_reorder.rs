//! Complex Schur form, then reorder the diagonal into a requested order.

use unitary_similarity::linalg::{reorder_schur, schur, SchurForm};
use unitary_similarity::oracle::generate::{rng_from_seed, unit_disc};
use unitary_similarity::ComplexMatrix;

fn show(label: &str, s: &SchurForm, a: &ComplexMatrix) {
    let diag: Vec<String> = s.order.iter().map(|z| format!("{:.3}{:+.3}i", z.re, z.im)).collect();
    println!("{label}: [{}], residual {:.1e}", diag.join(", "), s.residual(a));
}

fn main() -> unitary_similarity::Result<()> {
    let mut rng = rng_from_seed(2);
    let a = ComplexMatrix::from_fn(5, |_, _| unit_disc(&mut rng));
    let s = schur(&a)?;
    show("schur", &s, &a);

    let mut target = s.order.clone();
    target.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
    let r = reorder_schur(&s, &target, 1e-10)?;
    show("by decreasing modulus", &r, &a);
    println!("lower part: {:.1e}, unitarity: {:.1e}", r.t.max_lower(), r.u.unitarity_residual());
    Ok(())
}
