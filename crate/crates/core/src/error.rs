use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square and nonempty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("QR iteration did not converge within {0} sweeps")]
    NoConvergence(usize),

    #[error("spectra differ: cluster multiplicities do not agree")]
    SpectraMismatch,

    #[error("target ordering is not a permutation of the spectrum")]
    NotAPermutation,

    #[error("negative weight {value} at pair ({i}, {j})")]
    NegativeWeight { i: usize, j: usize, value: f64 },

    #[error("linear system is not consistent: residual {residual:e} exceeds bound {bound:e}")]
    NotConsistent { residual: f64, bound: f64 },

    #[error("canonical family for n = {n} exceeds the limit n <= {max} (pass --force to override)")]
    FamilyTooLarge { n: usize, max: usize },

    #[error("word enumeration up to length {len} exceeds the budget of {budget} words")]
    WordBudget { len: usize, budget: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
