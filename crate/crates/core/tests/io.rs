use proptest::prelude::*;

use unitary_similarity::io::{matrix_to_string, parse_matrix, read_matrix, write_matrix, MatrixFile};
use unitary_similarity::{c64, ComplexMatrix};

fn finite() -> impl Strategy<Value = f64> {
    any::<u64>().prop_map(f64::from_bits).prop_filter("finite", |x| x.is_finite())
}

fn matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..6).prop_flat_map(|n| {
        prop::collection::vec((finite(), finite()), n * n).prop_map(move |v| {
            let entries: Vec<c64> = v.into_iter().map(|(re, im)| c64::new(re, im)).collect();
            ComplexMatrix::from_row_slice(n, &entries).unwrap()
        })
    })
}

fn bits(m: &ComplexMatrix) -> Vec<(u64, u64)> {
    m.to_row_major().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
}

proptest! {
    #[test]
    fn string_round_trip_is_bit_exact(m in matrix()) {
        let back = parse_matrix(&matrix_to_string(&m)).unwrap();
        prop_assert_eq!(bits(&back), bits(&m));
    }

    #[test]
    fn document_round_trip(m in matrix()) {
        let doc = MatrixFile::from_matrix(&m);
        prop_assert_eq!(doc.entries.len(), doc.n * doc.n);
        prop_assert_eq!(bits(&doc.to_matrix().unwrap()), bits(&m));
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let m = ComplexMatrix::from_fn(3, |i, j| c64::new(0.1 * i as f64 - 1.0 / 3.0, (j as f64).sqrt()));
    write_matrix(&path, &m).unwrap();
    assert_eq!(bits(&read_matrix(&path).unwrap()), bits(&m));
}

#[test]
fn rejects_non_finite_and_ragged_input() {
    assert!(parse_matrix(r#"{"n": 1, "entries": [[1e400, 0]]}"#).is_err());
    assert!(parse_matrix(r#"{"n": 2, "entries": [[1, 0], [0, 0], [0, 0]]}"#).is_err());
    assert!(read_matrix("/nonexistent/matrix.json").is_err());
}
