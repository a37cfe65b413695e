//! Trace words in `M` and `M*`, and the bounded-length trace comparison.

use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{c64, ComplexMatrix};

/// Default relative tolerance on trace differences.
pub const DEFAULT_TOL_TRACE: f64 = 1e-8;

/// Maximal number of words (all lengths up to `L`) the enumeration will visit.
pub const WORD_BUDGET: u64 = 1 << 21;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// The matrix itself.
    S,
    /// Its conjugate transpose.
    T,
}

/// A nonempty word over `{s, t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("words must be nonempty".into()));
        }
        Ok(Self(letters))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                's' => Ok(Letter::S),
                't' => Ok(Letter::T),
                other => Err(Error::Parse(format!("unexpected letter {other:?} in word"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_bits(bits: u32, len: usize) -> Self {
        let letters = (0..len)
            .map(|k| {
                if (bits >> (len - 1 - k)) & 1 == 0 {
                    Letter::S
                } else {
                    Letter::T
                }
            })
            .collect();
        Self(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::S => "s",
                Letter::T => "t",
            })?;
        }
        Ok(())
    }
}

/// `tr W(M, M*)`, multiplying left to right.
pub fn trace_word(m: &ComplexMatrix, w: &Word) -> c64 {
    let adj = m.adjoint();
    let mut prod = DMatrix::<c64>::identity(m.n(), m.n());
    for l in w.letters() {
        prod = match l {
            Letter::S => prod * m.as_matrix(),
            Letter::T => prod * adj.as_matrix(),
        };
    }
    prod.trace()
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceVerdict {
    /// Some word separates the two matrices.
    Refuted { word: Word, gap: f64 },
    /// No word up to the length bound separates them. This is a proof of
    /// unitary similarity only when `complete` (length bound `≥ 2n²`).
    Consistent { words_checked: usize, complete: bool },
}

impl TraceVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, TraceVerdict::Refuted { .. })
    }
}

/// Whether `bits` (first letter in the most significant position) is the
/// smallest of its cyclic rotations.
fn is_rotation_minimal(bits: u32, len: usize) -> bool {
    let mask = if len == 32 { u32::MAX } else { (1u32 << len) - 1 };
    (1..len).all(|r| {
        let rotated = ((bits << r) | (bits >> (len - r))) & mask;
        bits <= rotated
    })
}

/// Compares `tr W(A, A*)` with `tr W(B, B*)` over all words of length at most
/// `max_len`, one word per cyclic rotation class.
///
/// A word of length `l` refutes when the traces differ by more than
/// `tol_trace · (1 + max(‖A‖_F, ‖B‖_F))^l`.
pub fn specht_pearcy_test(a: &ComplexMatrix, b: &ComplexMatrix, max_len: usize) -> Result<TraceVerdict> {
    specht_pearcy_test_with(a, b, max_len, DEFAULT_TOL_TRACE)
}

pub fn specht_pearcy_test_with(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    max_len: usize,
    tol_trace: f64,
) -> Result<TraceVerdict> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(a.n(), b.n()));
    }
    if max_len == 0 {
        return Err(Error::InvalidArgument("maximal word length must be at least 1".into()));
    }
    let total = if max_len >= 62 {
        u64::MAX
    } else {
        (1u64 << (max_len + 1)) - 2
    };
    if total > WORD_BUDGET {
        return Err(Error::WordBudget {
            len: max_len,
            budget: WORD_BUDGET,
        });
    }
    let n = a.n();
    let base = 1.0 + a.frobenius_norm().max(b.frobenius_norm());
    let letters_a = [a.as_matrix().clone(), a.as_matrix().adjoint()];
    let letters_b = [b.as_matrix().clone(), b.as_matrix().adjoint()];

    // depth-first over prefixes, carrying both prefix products
    struct Frame {
        bits: u32,
        len: usize,
        pa: DMatrix<c64>,
        pb: DMatrix<c64>,
    }
    let mut stack = vec![Frame {
        bits: 0,
        len: 0,
        pa: DMatrix::identity(n, n),
        pb: DMatrix::identity(n, n),
    }];
    let mut checked = 0usize;
    let mut shortest: Option<(u32, usize)> = None;
    while let Some(frame) = stack.pop() {
        if frame.len == max_len {
            continue;
        }
        for letter in (0..2u32).rev() {
            let bits = (frame.bits << 1) | letter;
            let len = frame.len + 1;
            let pa = &frame.pa * &letters_a[letter as usize];
            let pb = &frame.pb * &letters_b[letter as usize];
            if is_rotation_minimal(bits, len) {
                checked += 1;
                let gap = (pa.trace() - pb.trace()).norm();
                let allowed = tol_trace * base.powi(len as i32);
                // keep the shortest separating word
                if gap > allowed && shortest.is_none_or(|(_, l)| len < l) {
                    shortest = Some((bits, len));
                }
            }
            stack.push(Frame { bits, len, pa, pb });
        }
    }
    Ok(match shortest {
        Some((bits, len)) => {
            let word = Word::from_bits(bits, len);
            let gap = (trace_word(a, &word) - trace_word(b, &word)).norm();
            TraceVerdict::Refuted { word, gap }
        }
        None => TraceVerdict::Consistent {
            words_checked: checked,
            complete: max_len >= 2 * n * n,
        },
    })
}
