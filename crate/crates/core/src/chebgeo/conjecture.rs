//! Conjectured closed form for `‖J_n − I_n‖_p`, `n ≥ 4`.
//!
//! With `ρ = p − 1`, let `x_p` be the interior root of
//! `f(x) = ρ(1 + x^{1/ρ})(1 − x^{ρ−1}) + (1 + x^ρ)(1 − x^{1/ρ−1})` on `(0, 1)`
//! (`x = 1` is always a root and is excluded). With `m1 = ⌊n/(x_p+1)⌋` and
//! `m2 = ⌈n/(x_p+1)⌉` the radius is the larger of `g(m1)`, `g(m2)` where
//! `g(m) = ((n/m−1)^{p−1}+1)^{1/p} ((n/m−1)^{1/(p−1)}+1)^{1−1/p} / (n/m)`.

use serde::{Deserialize, Serialize};

use super::ChebError;
use crate::matcore::Exponent;

const SCAN_STEP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureResult {
    pub p: f64,
    pub rho: f64,
    pub x_p: f64,
    pub m1: usize,
    pub m2: usize,
    pub value: f64,
}

/// The scalar function whose interior root defines `x_p`.
pub fn conjecture_function(x: f64, p: f64) -> f64 {
    let rho = p - 1.0;
    let inv = 1.0 / rho;
    rho * (1.0 + x.powf(inv)) * (1.0 - x.powf(rho - 1.0)) + (1.0 + x.powf(rho)) * (1.0 - x.powf(inv - 1.0))
}

fn check_exponent(p: Exponent) -> Result<f64, ChebError> {
    let v = p.value();
    if !(v > 1.0 && v.is_finite()) {
        return Err(ChebError::bad_exponent(p));
    }
    if v == 2.0 {
        return Err(ChebError::DegenerateExponent);
    }
    Ok(v)
}

/// Interior root `x_p ∈ (0, 1)`: scans `0.001, 0.002, …, 0.999` for the
/// first sign change, then bisects down to adjacent floating-point numbers.
pub fn conjecture_root(p: Exponent) -> Result<f64, ChebError> {
    let pv = check_exponent(p)?;
    let f = |x: f64| conjecture_function(x, pv);
    let steps = (1.0 / SCAN_STEP).round() as usize;
    let mut prev_x = SCAN_STEP;
    let mut prev_f = f(prev_x);
    let mut bracket = None;
    for k in 2..steps {
        if prev_f == 0.0 {
            return Ok(prev_x);
        }
        let x = k as f64 * SCAN_STEP;
        let fx = f(x);
        if prev_f.signum() != fx.signum() {
            bracket = Some((prev_x, x, prev_f));
            break;
        }
        prev_x = x;
        prev_f = fx;
    }
    let (mut lo, mut hi, f_lo) = bracket.ok_or(ChebError::NoBracket(pv))?;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// `g(m)` above; `m = n` is the limit value 1.
fn block_value(n: usize, m: usize, p: f64) -> f64 {
    if m >= n {
        return 1.0;
    }
    let t = n as f64 / m as f64 - 1.0;
    (t.powf(p - 1.0) + 1.0).powf(1.0 / p) * (t.powf(1.0 / (p - 1.0)) + 1.0).powf(1.0 - 1.0 / p) / (n as f64 / m as f64)
}

/// Evaluates the conjectured radius. Unproven for `n ≥ 4`.
pub fn conjecture_radius(n: usize, p: Exponent) -> Result<ConjectureResult, ChebError> {
    if n < 2 {
        return Err(ChebError::Dimension {
            n,
            min: 2,
            max: usize::MAX,
        });
    }
    let x_p = conjecture_root(p)?;
    let pv = p.value();
    let ratio = n as f64 / (x_p + 1.0);
    let m1 = (ratio.floor() as usize).max(1);
    let m2 = (ratio.ceil() as usize).min(n);
    let value = block_value(n, m1, pv).max(block_value(n, m2, pv));
    Ok(ConjectureResult {
        p: pv,
        rho: pv - 1.0,
        x_p,
        m1,
        m2,
        value,
    })
}
