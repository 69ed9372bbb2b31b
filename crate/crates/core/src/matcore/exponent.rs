use std::fmt;
use std::str::FromStr;

use super::MatError;

/// Hölder exponent `p ∈ [1, ∞]`. `+∞` selects the max-norm.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Exponent(f64);

impl Exponent {
    pub const ONE: Exponent = Exponent(1.0);
    pub const TWO: Exponent = Exponent(2.0);
    pub const INF: Exponent = Exponent(f64::INFINITY);

    pub fn new(p: f64) -> Result<Self, MatError> {
        if p.is_nan() || p < 1.0 {
            return Err(MatError::BadExponent(p));
        }
        Ok(Self(p))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_inf(self) -> bool {
        self.0.is_infinite()
    }

    /// True for `p ∈ {1, 2, ∞}`, where the operator norm has a closed form.
    pub fn has_exact_norm(self) -> bool {
        self.0 == 1.0 || self.0 == 2.0 || self.is_inf()
    }

    /// Hölder conjugate `q` with `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Exponent {
        if self.0 == 1.0 {
            Exponent::INF
        } else if self.is_inf() {
            Exponent::ONE
        } else {
            Exponent(self.0 / (self.0 - 1.0))
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for Exponent {
    type Err = MatError;

    /// Accepts `inf` (any case, also `infinity` and `∞`) or a decimal ≥ 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "inf" | "+inf" | "infinity") || t == "∞" {
            return Ok(Exponent::INF);
        }
        let p: f64 = t
            .parse()
            .map_err(|_| MatError::Parse(format!("invalid exponent {s:?}")))?;
        Exponent::new(p)
    }
}

impl TryFrom<f64> for Exponent {
    type Error = MatError;

    fn try_from(p: f64) -> Result<Self, Self::Error> {
        Exponent::new(p)
    }
}

/// `(Σ|x_k|^p)^{1/p}`, or `max |x_k|` for `p = ∞`.
pub fn vector_pnorm(x: &[f64], p: Exponent) -> f64 {
    let p = p.value();
    if p.is_infinite() {
        return x.iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    if p == 2.0 {
        return x.iter().map(|v| v * v).sum::<f64>().sqrt();
    }
    // Scale by the largest magnitude so |x_k|^p neither overflows nor underflows.
    let scale = x.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|v| (v.abs() / scale).powf(p)).sum();
    scale * s.powf(1.0 / p)
}
