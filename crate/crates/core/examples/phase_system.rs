//! Solve the phase system for every branch vector of a 4x4 triangular matrix.

use nalgebra::DVector;
use unitary_similarity::canonical::branch_vectors;
use unitary_similarity::phase::{extract_phase, weighted_laplacian, PhaseSystem};
use unitary_similarity::{c64, ComplexMatrix};

fn main() -> unitary_similarity::Result<()> {
    let t = ComplexMatrix::from_fn(4, |i, j| match (i, j) {
        _ if i > j => c64::new(0.0, 0.0),
        _ if i == j => c64::new(i as f64 + 1.0, 0.0),
        (0, 2) => c64::new(0.0, 0.0),
        _ => c64::from_polar(1.0 + 0.25 * j as f64, 0.7 * (i + 2 * j) as f64),
    });
    let data = extract_phase(&t, 1e-12);
    println!("r   = {:?}", data.r);
    println!("phi = {:?}", data.phi);
    println!("masked: {:?}", data.zero_mask);

    let r = weighted_laplacian(data.pairs, &data.r)?;
    println!("R(r) =\n{r:.3}");

    let system = PhaseSystem::new(data)?;
    println!("rank {} of {}", system.solver().rank(), system.solver().dim());
    for m in branch_vectors(4) {
        let sol = system.solve(&m)?;
        let res = (&r * DVector::from_vec(sol.psi.clone()) + system.rhs(&m)).norm();
        println!("m = {m:?}: psi = {:.4?}, residual {res:.1e}", sol.psi);
    }
    Ok(())
}
