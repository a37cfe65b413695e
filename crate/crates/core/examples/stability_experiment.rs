use std::f64::consts::PI;

use unitary_similarity::canonical::FamilyOptions;
use unitary_similarity::stability::{builtin_a4, perturbation_experiment};
use unitary_similarity::c64;

fn main() -> unitary_similarity::Result<()> {
    let base = builtin_a4(c64::new(0.0, 0.0));
    for (label, arg) in [("0", 0.0), ("pi/2", PI / 2.0), ("pi", PI)] {
        let report = perturbation_experiment(&base, (2, 3), &[1e-2, 1e-4, 1e-6], arg, true, &FamilyOptions::default())?;
        println!("arg = {label}");
        println!("{:>10} {:>14} {:>10} {:>14}", "|eps|", "family", "ratio", "baseline");
        for row in &report.rows {
            println!(
                "{:>10.0e} {:>14.6e} {:>10.4} {:>14.6e}",
                row.magnitude,
                row.family_distance,
                row.ratio.unwrap_or(0.0),
                row.baseline_distance.unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
