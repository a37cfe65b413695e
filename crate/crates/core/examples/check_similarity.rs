//! Decide unitary similarity for a constructed pair and print the certificate.

use unitary_similarity::oracle::generate::{gen_nonderogatory, random_unitary};
use unitary_similarity::similarity::{check_unitary_similarity, Config};
use unitary_similarity::c64;

fn main() -> unitary_similarity::Result<()> {
    let spectrum = [c64::new(1.0, 0.0), c64::new(1.0, 0.0), c64::new(-0.5, 2.0), c64::new(3.0, -1.0)];
    let a = gen_nonderogatory(&spectrum, 11);
    let b = a.conjugated_by(&random_unitary(4, 12));

    let v = check_unitary_similarity(&a, &b, &Config::default())?;
    println!("similar: {} ({})", v.similar, v.reason);
    if let Some((m1, m2)) = &v.witnesses {
        println!("witnesses: m1 = {m1:?}, m2 = {m2:?}");
    }
    println!("residual: {:.3e}", v.residual.unwrap_or(f64::NAN));
    println!("rank margin: {:.3e}", v.nonderogatory_margin.unwrap_or(f64::NAN));

    let mut c = b.clone();
    c[(0, 1)] += c64::new(0.05, 0.0);
    let w = check_unitary_similarity(&a, &c, &Config::default())?;
    println!("after nudging one entry: similar = {} ({})", w.similar, w.reason);
    Ok(())
}
