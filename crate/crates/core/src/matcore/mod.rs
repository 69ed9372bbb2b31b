//! Dense matrix foundation: construction, validation, norms and the special
//! matrices `I_n` and `J_n`.

mod exponent;
pub mod io;
mod mat;
mod perm;
mod poly;
mod stochastic;

use thiserror::Error;

pub use exponent::{vector_pnorm, Exponent};
pub use mat::Mat;
pub use perm::Permutation;
pub use poly::{char_poly, frobenius_norm, poly_mul, symmetric_eigen, CharPoly, CHAR_POLY_MAX_N};
pub use stochastic::{averager, validate_doubly_stochastic, DoublyStochastic, DEFAULT_VALIDATION_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatError {
    #[error("matrix must have at least one row")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("entry ({row}, {col}) = {value} is negative")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("row {row} sums to {sum}, not 1")]
    RowSum { row: usize, sum: f64 },
    #[error("column {col} sums to {sum}, not 1")]
    ColSum { col: usize, sum: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("exponent p = {0} is outside [1, inf]")]
    BadExponent(f64),
    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),
    #[error("dimension {n} exceeds the limit {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl MatError {
    /// Stable snake_case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            MatError::EmptyMatrix => "empty_matrix",
            MatError::Shape { .. } => "shape",
            MatError::RaggedRow { .. } => "ragged_row",
            MatError::NonFinite { .. } => "non_finite",
            MatError::NegativeEntry { .. } => "negative_entry",
            MatError::RowSum { .. } => "row_sum",
            MatError::ColSum { .. } => "col_sum",
            MatError::BadTolerance(_) => "bad_tolerance",
            MatError::BadExponent(_) => "bad_exponent",
            MatError::NotAPermutation(_) => "not_a_permutation",
            MatError::DimensionTooLarge { .. } => "dimension_too_large",
            MatError::Parse(_) => "parse",
        }
    }
}
