//! Seeded nonderogatory instances with repeated eigenvalues, written as JSON.

use unitary_similarity::io::matrix_to_string;
use unitary_similarity::linalg::{nonderogatory_margin, schur};
use unitary_similarity::oracle::generate::gen_nonderogatory_instance;
use unitary_similarity::c64;

fn main() -> unitary_similarity::Result<()> {
    let spectrum = [c64::new(2.0, 0.0), c64::new(2.0, 0.0), c64::new(2.0, 0.0), c64::new(-1.0, 1.0)];
    let inst = gen_nonderogatory_instance(&spectrum, 7);
    println!("T = {:?}", inst.t);
    println!("unitarity of Q: {:.1e}", inst.q.unitarity_residual());
    println!("rank margin of T: {:.3e}", nonderogatory_margin(&schur(&inst.t)?));
    println!("{}", matrix_to_string(&inst.a));
    Ok(())
}
