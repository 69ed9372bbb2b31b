//! Checks that `J_n` behaves as the Chebyshev center: it is at distance
//! `‖J_n − I_n‖` from every vertex, other points are farther from some
//! vertex, and `D − J_n` keeps the spectrum of `D` with the Perron
//! eigenvalue 1 replaced by 0.

use serde::{Deserialize, Serialize};

use super::{averager_minus_identity, bounding_radius_enumerate, ChebError};
use crate::matcore::{averager, char_poly, poly_mul, DoublyStochastic, Exponent, Permutation};
use crate::opnorm::{opnorm_value, EstimateConfig};
use crate::sampling::enumerate_permutations;

pub const EQUIDISTANCE_MAX_N: usize = 6;
pub const SPECTRUM_MAX_N: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CenterCertificate {
    pub is_center_candidate: bool,
    pub worst_permutation: Permutation,
    /// `max_P ‖D − P‖`.
    pub attained: f64,
    /// `‖J_n − I_n‖`, the Chebyshev radius.
    pub reference: f64,
}

/// Compares the farthest-vertex distance from `D` with `‖J_n − I_n‖`.
/// `D` is a candidate center iff `attained ≤ reference + tol`.
///
/// This is an empirical check. Uniqueness of the center can only be probed
/// by trying perturbations of `J_n`, not certified over all of `Ω_n`.
pub fn center_certificate(
    d: &DoublyStochastic,
    p: Exponent,
    tol: f64,
    cfg: &EstimateConfig,
) -> Result<CenterCertificate, ChebError> {
    let ball = bounding_radius_enumerate(d, p, cfg)?;
    let reference = opnorm_value(&averager_minus_identity(d.n()), p, cfg)?.value;
    Ok(CenterCertificate {
        is_center_candidate: ball.value <= reference + tol,
        worst_permutation: ball.maximizer.expect("enumeration always reports a maximizer"),
        attained: ball.value,
        reference,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquidistanceReport {
    pub equidistant: bool,
    pub min_distance: f64,
    pub max_distance: f64,
    pub tolerance: f64,
}

/// Whether `‖J_n − P‖_p` takes one value over all permutations `P`.
/// Tolerance `1e-9` for exact norms, `1e-6` for power-method estimates.
pub fn equidistance_check(p: Exponent, n: usize, cfg: &EstimateConfig) -> Result<EquidistanceReport, ChebError> {
    if n == 0 || n > EQUIDISTANCE_MAX_N {
        return Err(ChebError::Dimension {
            n,
            min: 1,
            max: EQUIDISTANCE_MAX_N,
        });
    }
    let j = averager(n);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for perm in enumerate_permutations(n)? {
        let v = opnorm_value(&(j.mat() - &perm.to_mat()), p, cfg)?.value;
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let tolerance = if p.has_exact_norm() { 1e-9 } else { 1e-6 };
    Ok(EquidistanceReport {
        equidistant: hi - lo <= tolerance,
        min_distance: lo,
        max_distance: hi,
        tolerance,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub holds: bool,
    pub max_deviation: f64,
    /// Deviation allowed: `tol · (1 + max |coefficient|)`.
    pub allowed: f64,
}

/// Verifies `(λ − 1)·χ_{D−J_n}(λ) = λ·χ_D(λ)` coefficient by coefficient,
/// i.e. that `D − J_n` has the eigenvalues of `D` with one eigenvalue 1
/// swapped for 0, without computing any eigenvalue.
pub fn spectrum_shift_check(d: &DoublyStochastic, tol: f64) -> Result<SpectrumReport, ChebError> {
    let n = d.n();
    if n > SPECTRUM_MAX_N {
        return Err(ChebError::Dimension {
            n,
            min: 1,
            max: SPECTRUM_MAX_N,
        });
    }
    let shifted = char_poly(&(d.mat() - averager(n).mat()))?;
    let original = char_poly(d.mat())?;
    let lhs = poly_mul(&[1.0, -1.0], shifted.coeffs());
    let rhs = poly_mul(&[1.0, 0.0], original.coeffs());
    let scale = lhs.iter().chain(&rhs).fold(0.0, |m: f64, c| m.max(c.abs()));
    let max_deviation = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let allowed = tol * (1.0 + scale);
    Ok(SpectrumReport {
        holds: max_deviation <= allowed,
        max_deviation,
        allowed,
    })
}
