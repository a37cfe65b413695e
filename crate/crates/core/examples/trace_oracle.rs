//! Compare traces of words in A, A* and B, B*.

use unitary_similarity::oracle::generate::{gen_nonderogatory, random_unitary};
use unitary_similarity::oracle::words::{specht_pearcy_test, TraceVerdict};
use unitary_similarity::c64;

fn main() -> unitary_similarity::Result<()> {
    let spectrum = [c64::new(1.0, 0.0), c64::new(0.0, 1.0), c64::new(-2.0, 0.5)];
    let a = gen_nonderogatory(&spectrum, 1);
    let b = a.conjugated_by(&random_unitary(3, 2));
    let c = gen_nonderogatory(&spectrum, 3);

    for (label, other, len) in [("conjugate", &b, 12), ("same spectrum, new entries", &c, 6)] {
        match specht_pearcy_test(&a, other, len)? {
            TraceVerdict::Refuted { word, gap } => println!("{label}: refuted by {word} (gap {gap:.3e})"),
            TraceVerdict::Consistent { words_checked, complete } => {
                println!("{label}: consistent over {words_checked} words (complete: {complete})")
            }
        }
    }
    Ok(())
}
