use crate::matrix::{c64, ComplexMatrix};

/// Complex plane rotation `G = [[c, s], [-conj(s), c]]` with real `c`.
///
/// `G · [f, g]^T = [r, 0]^T`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Rotation {
    pub c: f64,
    pub s: c64,
}

impl Rotation {
    pub fn zeroing(f: c64, g: c64) -> (Self, c64) {
        let zero = c64::new(0.0, 0.0);
        if g == zero {
            return (Self { c: 1.0, s: zero }, f);
        }
        if f == zero {
            let ag = g.norm();
            return (Self { c: 0.0, s: g.conj() / ag }, c64::new(ag, 0.0));
        }
        let af = f.norm();
        let norm = af.hypot(g.norm());
        let alpha = f / af;
        let rot = Self {
            c: af / norm,
            s: alpha * g.conj() / norm,
        };
        (rot, alpha * norm)
    }

    /// Rows `p`, `q` ← `G · rows`, for columns in `cols`.
    pub fn apply_rows(&self, m: &mut ComplexMatrix, p: usize, q: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(p, j)];
            let y = m[(q, j)];
            m[(p, j)] = x * self.c + self.s * y;
            m[(q, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Columns `p`, `q` ← `cols · G*`, for rows in `rows`.
    pub fn apply_cols_adjoint(
        &self,
        m: &mut ComplexMatrix,
        p: usize,
        q: usize,
        rows: std::ops::Range<usize>,
    ) {
        for i in rows {
            let x = m[(i, p)];
            let y = m[(i, q)];
            m[(i, p)] = x * self.c + self.s.conj() * y;
            m[(i, q)] = -self.s * x + y * self.c;
        }
    }
}
