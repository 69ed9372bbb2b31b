//! Chebyshev radius `R_p(Ω_n) = ‖J_n − I_n‖_p`.

use super::{conjecture_radius, ChebError, RadiusMethod, RadiusReport};
use crate::matcore::{averager, Exponent, Mat, Permutation};
use crate::opnorm::{opnorm_value, EstimateConfig, NormMethod};

/// How far a certified lower bound may exceed the conjectured value before
/// the conjecture is reported as contradicted.
pub const CONJECTURE_SLACK: f64 = 1e-5;

/// `J_n − I_n`.
pub fn averager_minus_identity(n: usize) -> Mat {
    averager(n).mat() - &Mat::identity(n)
}

/// `R_p(Ω_3) = (2^{p−1}+1)^{1/p} (2^{1/(p−1)}+1)^{1−1/p} / 3` for `1 < p < ∞`.
pub fn closed_form_radius_n3(p: Exponent) -> Result<f64, ChebError> {
    let v = p.value();
    if !(v > 1.0 && v.is_finite()) {
        return Err(ChebError::bad_exponent(p));
    }
    Ok((2f64.powf(v - 1.0) + 1.0).powf(1.0 / v) * (2f64.powf(1.0 / (v - 1.0)) + 1.0).powf(1.0 - 1.0 / v) / 3.0)
}

/// `1 ≤ R_p(Ω_n) ≤ (2(n−1)/n)^{|2/p − 1|}` for `n ≥ 2`, `1 < p < ∞`.
pub fn radius_bounds(n: usize, p: Exponent) -> Result<(f64, f64), ChebError> {
    let v = p.value();
    if !(v > 1.0 && v.is_finite()) {
        return Err(ChebError::bad_exponent(p));
    }
    if n < 2 {
        return Err(ChebError::Dimension {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let base = 2.0 * (n as f64 - 1.0) / n as f64;
    Ok((1.0, base.powf((2.0 / v - 1.0).abs())))
}

fn interior_bounds(n: usize, p: Exponent, value: f64) -> (f64, f64) {
    match radius_bounds(n, p) {
        Ok(b) => b,
        Err(_) => (value, value),
    }
}

/// Chebyshev radius with default estimator settings.
pub fn chebyshev_radius(n: usize, p: Exponent) -> Result<RadiusReport, ChebError> {
    chebyshev_radius_with(n, p, &EstimateConfig::for_dim(n))
}

/// Dispatch, most specific first:
/// `p ∈ {1, ∞}` gives `2(1 − 1/n)`; `p = 2` or `n = 2` gives 1; `n = 3` uses
/// the closed form; otherwise the conjectured value is reported, checked
/// against a power-method lower bound for `‖J_n − I_n‖_p`.
pub fn chebyshev_radius_with(n: usize, p: Exponent, cfg: &EstimateConfig) -> Result<RadiusReport, ChebError> {
    if n == 0 {
        return Err(ChebError::Dimension {
            n,
            min: 1,
            max: usize::MAX,
        });
    }
    if n == 1 {
        // Ω_1 is the single point [1].
        return Ok(RadiusReport::exact(
            0.0,
            RadiusMethod::PermutationEnumeration,
            Some(Permutation::identity(1)),
        ));
    }
    let identity = Some(Permutation::identity(n));
    if p == Exponent::ONE || p.is_inf() {
        let method = if p.is_inf() {
            RadiusMethod::FormulaPinf
        } else {
            RadiusMethod::FormulaP1
        };
        return Ok(RadiusReport::exact(2.0 * (1.0 - 1.0 / n as f64), method, identity));
    }
    if p == Exponent::TWO {
        return Ok(RadiusReport::exact(1.0, RadiusMethod::FormulaP2, identity));
    }
    let (lower, upper) = radius_bounds(n, p)?;
    if n == 2 {
        return Ok(RadiusReport {
            value: 1.0,
            method: RadiusMethod::FormulaN2,
            lower_bound: lower,
            upper_bound: upper,
            maximizer: identity,
        });
    }
    if n == 3 {
        return Ok(RadiusReport {
            value: closed_form_radius_n3(p)?,
            method: RadiusMethod::ClosedFormN3,
            lower_bound: lower,
            upper_bound: upper,
            maximizer: identity,
        });
    }
    let conjectured = conjecture_radius(n, p)?.value;
    let certified = opnorm_value(&averager_minus_identity(n), p, cfg)?.value;
    if certified > conjectured + CONJECTURE_SLACK {
        return Err(ChebError::ConjectureContradicted {
            conjecture: conjectured,
            lower_bound: certified,
        });
    }
    Ok(RadiusReport {
        value: conjectured,
        method: RadiusMethod::Conjecture,
        lower_bound: lower.max(certified).min(conjectured),
        upper_bound: upper,
        maximizer: identity,
    })
}

/// `‖J_n − I_n‖_p` from the power method alone: a certified lower bound.
pub fn chebyshev_radius_estimate(n: usize, p: Exponent, cfg: &EstimateConfig) -> Result<RadiusReport, ChebError> {
    let est = opnorm_value(&averager_minus_identity(n), p, cfg)?;
    let (lower, upper) = interior_bounds(n, p, est.value);
    Ok(RadiusReport {
        value: est.value,
        method: match est.method {
            NormMethod::ExactP1 => RadiusMethod::FormulaP1,
            NormMethod::ExactP2 => RadiusMethod::FormulaP2,
            NormMethod::ExactPinf => RadiusMethod::FormulaPinf,
            _ => RadiusMethod::Estimate,
        },
        lower_bound: lower.max(est.value),
        upper_bound: upper.max(est.value),
        maximizer: Some(Permutation::identity(n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn closed_values() {
        let r = chebyshev_radius(5, Exponent::ONE).unwrap();
        assert_eq!(r.value, 8.0 / 5.0);
        assert_eq!(r.method, RadiusMethod::FormulaP1);
        assert_eq!(chebyshev_radius(7, Exponent::TWO).unwrap().value, 1.0);
        assert_eq!(
            chebyshev_radius(4, Exponent::INF).unwrap().method,
            RadiusMethod::FormulaPinf
        );
        assert_eq!(chebyshev_radius(1, p(3.0)).unwrap().value, 0.0);
        let n2 = chebyshev_radius(2, p(3.7)).unwrap();
        assert_eq!((n2.value, n2.method), (1.0, RadiusMethod::FormulaN2));
    }

    #[test]
    fn n3_closed_form() {
        assert!((closed_form_radius_n3(Exponent::TWO).unwrap() - 1.0).abs() < 1e-15);
        let at3 = closed_form_radius_n3(p(3.0)).unwrap();
        assert!((at3 - 1.025_776_007_690_430_3).abs() < 1e-12);
        // J_3 − I_3 is symmetric, so the conjugate exponent gives the same norm.
        assert!((closed_form_radius_n3(p(1.5)).unwrap() - at3).abs() < 1e-12);
        let r = chebyshev_radius(3, p(3.0)).unwrap();
        assert_eq!(r.method, RadiusMethod::ClosedFormN3);
        assert!(r.is_consistent());
        assert!(closed_form_radius_n3(Exponent::ONE).is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(radius_bounds(2, p(3.0)).unwrap(), (1.0, 1.0));
        assert_eq!(radius_bounds(2, p(1.3)).unwrap(), (1.0, 1.0));
        for n in 2..10 {
            assert_eq!(radius_bounds(n, Exponent::TWO).unwrap(), (1.0, 1.0));
        }
        let (lo, hi) = radius_bounds(3, p(3.0)).unwrap();
        assert_eq!(lo, 1.0);
        assert!((hi - (4.0f64 / 3.0).powf(1.0 / 3.0)).abs() < 1e-15);
        assert!((hi - 1.100642).abs() < 1e-6);
        assert!(matches!(
            radius_bounds(3, Exponent::ONE),
            Err(ChebError::BadExponent(_))
        ));
        assert!(radius_bounds(1, p(3.0)).is_err());
    }

    #[test]
    fn conjecture_branch_is_consistent() {
        let r = chebyshev_radius(4, p(3.0)).unwrap();
        assert_eq!(r.method, RadiusMethod::Conjecture);
        assert!(r.is_consistent(), "{r:?}");
        assert!(r.lower_bound > 1.0);
        let est = chebyshev_radius_estimate(4, p(3.0), &EstimateConfig::for_dim(4)).unwrap();
        assert!((est.value - r.value).abs() < 1e-4);
        assert_eq!(est.method, RadiusMethod::Estimate);
    }
}
