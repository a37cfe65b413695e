//! JSON matrix documents: `{"n": 2, "entries": [[re, im], ...]}`, row-major.
//!
//! Floats are written in shortest round-trip form and parsed with correct
//! rounding, so `parse(serialize(M)) == M` bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            n: m.n(),
            entries: m.to_row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.n == 0 {
            return Err(Error::Parse("n must be positive".into()));
        }
        if self.entries.len() != self.n * self.n {
            return Err(Error::Parse(format!(
                "expected {} entries for n = {}, found {}",
                self.n * self.n,
                self.n,
                self.entries.len()
            )));
        }
        let entries: Vec<c64> = self.entries.iter().map(|&[re, im]| c64::new(re, im)).collect();
        ComplexMatrix::from_row_slice(self.n, &entries)
    }
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let doc: MatrixFile = serde_json::from_str(text)?;
    doc.to_matrix()
}

pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix documents always serialize")
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    let mut text = matrix_to_string(m);
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_layout() {
        let m = parse_matrix(r#"{"n": 2, "entries": [[1, 0], [0, 1], [0, 0], [2.5, -1e-3]]}"#).unwrap();
        assert_eq!(m[(0, 1)], c64::new(0.0, 1.0));
        assert_eq!(m[(1, 1)], c64::new(2.5, -1e-3));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_matrix(r#"{"n": 2, "entries": [[1, 0]]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 0, "entries": []}"#).is_err());
        assert!(parse_matrix(r#"{"entries": [[1, 0]]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 1, "entries": [[1]]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }

    #[test]
    fn awkward_floats_round_trip() {
        let vals = [0.1, -0.0, 5e-324, f64::MAX, 1.0 / 3.0, 2.0f64.sqrt(), -1.7976931348623157e308];
        let m = ComplexMatrix::from_fn(3, |i, j| c64::new(vals[(i + j) % vals.len()], vals[(i * j + 1) % vals.len()]));
        let back = parse_matrix(&matrix_to_string(&m)).unwrap();
        for (a, b) in m.to_row_major().iter().zip(back.to_row_major()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}
