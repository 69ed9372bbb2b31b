//! Bounding balls and Chebyshev centers of the Birkhoff polytope `Ω_n`.
//!
//! For a doubly stochastic `D`, the smallest ball centered at `D` that
//! contains `Ω_n` has radius `r_p(D) = max_P ‖D − P‖_p` over permutation
//! matrices `P`, since a convex function on `Ω_n` peaks at a vertex. The
//! Chebyshev radius `R_p(Ω_n)` is the minimum of `r_p` over `Ω_n`; it is
//! attained at the averaging matrix `J_n` and equals `‖J_n − I_n‖_p`.

mod ball;
mod certify;
mod conjecture;
mod radius;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcore::{Exponent, MatError, Permutation};
use crate::opnorm::OpNormError;
use crate::sampling::SamplingError;

pub use ball::{bounding_radius_enumerate, bounding_radius_l1, bounding_radius_linf, ENUMERATION_MAX_N};
pub use certify::{
    center_certificate, equidistance_check, spectrum_shift_check, CenterCertificate, EquidistanceReport,
    SpectrumReport, EQUIDISTANCE_MAX_N, SPECTRUM_MAX_N,
};
pub use conjecture::{conjecture_function, conjecture_radius, conjecture_root, ConjectureResult};
pub use radius::{
    averager_minus_identity, chebyshev_radius, chebyshev_radius_estimate, chebyshev_radius_with, closed_form_radius_n3,
    radius_bounds, CONJECTURE_SLACK,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChebError {
    #[error("exponent {0} is outside the range this operation accepts")]
    BadExponent(f64),
    #[error("p = 2 makes the conjecture's scalar function vanish identically")]
    DegenerateExponent,
    #[error("no sign change of the conjecture function on the search grid for p = {0}")]
    NoBracket(f64),
    #[error("dimension {n} is outside the supported range {min}..={max}")]
    Dimension { n: usize, min: usize, max: usize },
    #[error("conjectured radius {conjecture} is below the certified lower bound {lower_bound}")]
    ConjectureContradicted { conjecture: f64, lower_bound: f64 },
    #[error(transparent)]
    Norm(#[from] OpNormError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
}

impl ChebError {
    /// Stable snake_case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            ChebError::BadExponent(_) => "bad_exponent",
            ChebError::DegenerateExponent => "degenerate_exponent",
            ChebError::NoBracket(_) => "no_bracket",
            ChebError::Dimension { .. } => "dimension",
            ChebError::ConjectureContradicted { .. } => "conjecture_contradicted",
            ChebError::Norm(e) => e.code(),
            ChebError::Mat(e) => e.code(),
            ChebError::Sampling(e) => e.code(),
        }
    }

    pub(crate) fn bad_exponent(p: Exponent) -> Self {
        ChebError::BadExponent(p.value())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusMethod {
    FormulaP1,
    FormulaPinf,
    FormulaP2,
    FormulaN2,
    ClosedFormN3,
    Conjecture,
    PermutationEnumeration,
    Estimate,
}

impl RadiusMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            RadiusMethod::FormulaP1 => "formula_p1",
            RadiusMethod::FormulaPinf => "formula_pinf",
            RadiusMethod::FormulaP2 => "formula_p2",
            RadiusMethod::FormulaN2 => "formula_n2",
            RadiusMethod::ClosedFormN3 => "closed_form_n3",
            RadiusMethod::Conjecture => "conjecture",
            RadiusMethod::PermutationEnumeration => "permutation_enumeration",
            RadiusMethod::Estimate => "estimate",
        }
    }
}

/// A radius with the method that produced it and an enclosing interval.
///
/// `lower_bound ≤ value ≤ upper_bound` (up to `1e-9`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub value: f64,
    pub method: RadiusMethod,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub maximizer: Option<Permutation>,
}

impl RadiusReport {
    pub(crate) fn exact(value: f64, method: RadiusMethod, maximizer: Option<Permutation>) -> Self {
        Self {
            value,
            method,
            lower_bound: value,
            upper_bound: value,
            maximizer,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.lower_bound <= self.value + 1e-9 && self.value <= self.upper_bound + 1e-9
    }
}
