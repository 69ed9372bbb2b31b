//! Induced operator norms `‖A‖ = sup ‖Ax‖_p / ‖x‖_p`.
//!
//! Exact for `p ∈ {1, 2, ∞}`. For other `p` the nonlinear power method gives
//! a lower bound attained by an explicit certificate vector; for `n ≤ 3` an
//! angular-grid search serves as an independent oracle.

mod estimate;
mod oracle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcore::{symmetric_eigen, vector_pnorm, Exponent, Mat};

pub use estimate::{opnorm_estimate, EstimateConfig};
pub use oracle::{opnorm_oracle_small, ORACLE_MIN_GRID};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpNormError {
    #[error("exponent {0} has no closed-form operator norm")]
    UnsupportedExponent(Exponent),
    #[error("the power method needs 1 < p < inf, got {0}")]
    EstimatorExponent(Exponent),
    #[error("power iteration did not reach the relative tolerance on any restart (best value {})", .best.value)]
    NoConvergence { best: Box<NormEstimate> },
    #[error("oracle supports n in {{2, 3}}, got n = {0}")]
    DimensionTooLarge(usize),
    #[error("invalid configuration: {0}")]
    BadConfig(&'static str),
}

impl OpNormError {
    /// Stable snake_case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            OpNormError::UnsupportedExponent(_) => "unsupported_exponent",
            OpNormError::EstimatorExponent(_) => "estimator_exponent",
            OpNormError::NoConvergence { .. } => "no_convergence",
            OpNormError::DimensionTooLarge(_) => "dimension_too_large",
            OpNormError::BadConfig(_) => "bad_config",
        }
    }

    /// Best available estimate when the only problem was slow convergence.
    pub fn into_best(self) -> Result<NormEstimate, OpNormError> {
        match self {
            OpNormError::NoConvergence { best } => Ok(*best),
            other => Err(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    ExactP1,
    ExactP2,
    ExactPinf,
    PowerLowerBound,
    ExhaustiveOracle,
}

impl NormMethod {
    pub fn is_exact(self) -> bool {
        matches!(self, NormMethod::ExactP1 | NormMethod::ExactP2 | NormMethod::ExactPinf)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::ExactP1 => "exact_p1",
            NormMethod::ExactP2 => "exact_p2",
            NormMethod::ExactPinf => "exact_pinf",
            NormMethod::PowerLowerBound => "power_lower_bound",
            NormMethod::ExhaustiveOracle => "exhaustive_oracle",
        }
    }
}

/// A norm value with a vector `x`, `‖x‖_p = 1`, such that `‖Ax‖_p` is the
/// reported value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub certificate: Vec<f64>,
    pub iterations: usize,
    pub restarts_used: usize,
    pub method: NormMethod,
    pub converged: bool,
}

/// Ratio `‖Ax‖_p / ‖x‖_p`.
pub fn rayleigh_ratio(a: &Mat, x: &[f64], p: Exponent) -> f64 {
    let nx = vector_pnorm(x, p);
    if nx == 0.0 {
        return 0.0;
    }
    vector_pnorm(&a.mul_vec(x), p) / nx
}

/// Closed-form norms: maximum absolute column sum (`p = 1`), maximum
/// absolute row sum (`p = ∞`), largest singular value (`p = 2`).
pub fn opnorm_exact(a: &Mat, p: Exponent) -> Result<NormEstimate, OpNormError> {
    let n = a.n();
    let (value, certificate, method) = if p == Exponent::ONE {
        let mut best = (0.0, 0);
        for j in 0..n {
            let s: f64 = (0..n).map(|i| a.get(i, j).abs()).sum();
            if s > best.0 {
                best = (s, j);
            }
        }
        let mut x = vec![0.0; n];
        x[best.1] = 1.0;
        (best.0, x, NormMethod::ExactP1)
    } else if p.is_inf() {
        let mut best = (0.0, 0);
        for (i, row) in a.rows().enumerate() {
            let s: f64 = row.iter().map(|v| v.abs()).sum();
            if s > best.0 {
                best = (s, i);
            }
        }
        let x = a
            .row(best.1)
            .iter()
            .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
            .collect();
        (best.0, x, NormMethod::ExactPinf)
    } else if p == Exponent::TWO {
        let gram = &a.transpose() * a;
        let (_, vectors) = symmetric_eigen(&gram);
        let x = vectors.into_iter().next().expect("n >= 1");
        let value = vector_pnorm(&a.mul_vec(&x), Exponent::TWO) / vector_pnorm(&x, Exponent::TWO);
        (value, x, NormMethod::ExactP2)
    } else {
        return Err(OpNormError::UnsupportedExponent(p));
    };
    Ok(NormEstimate {
        value,
        certificate,
        iterations: 0,
        restarts_used: 0,
        method,
        converged: true,
    })
}

/// Exact formula where one exists, power-method lower bound otherwise.
pub fn opnorm(a: &Mat, p: Exponent, cfg: &EstimateConfig) -> Result<NormEstimate, OpNormError> {
    if p.has_exact_norm() {
        opnorm_exact(a, p)
    } else {
        opnorm_estimate(a, p, cfg)
    }
}

/// Like [`opnorm`] but returns the best estimate even when the power method
/// ran out of iterations.
pub fn opnorm_value(a: &Mat, p: Exponent, cfg: &EstimateConfig) -> Result<NormEstimate, OpNormError> {
    opnorm(a, p, cfg).or_else(OpNormError::into_best)
}

/// Riesz–Thorin interpolation bound `‖A‖_p ≤ ‖A‖_1^{1/p} ‖A‖_∞^{1−1/p}`.
pub fn interpolation_upper_bound(a: &Mat, p: Exponent) -> f64 {
    let one = a.max_abs_col_sum();
    let inf = a.max_abs_row_sum();
    if p.is_inf() {
        return inf;
    }
    let t = 1.0 / p.value();
    one.powf(t) * inf.powf(1.0 - t)
}
