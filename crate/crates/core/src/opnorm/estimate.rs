use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NormEstimate, NormMethod, OpNormError};
use crate::matcore::{vector_pnorm, Exponent, Mat};

/// Settings for the power method.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimateConfig {
    pub restarts: usize,
    pub max_iter: usize,
    pub rel_tol: f64,
    pub seed: u64,
}

impl EstimateConfig {
    /// Defaults for an `n×n` matrix: `8 + 2n` restarts, 500 iterations,
    /// relative tolerance `1e-12`.
    pub fn for_dim(n: usize) -> Self {
        Self {
            restarts: 8 + 2 * n,
            max_iter: 500,
            rel_tol: 1e-12,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// `sign(y_k)|y_k|^{r−1}` scaled to unit `r'`-norm (`r'` conjugate to `r`).
/// Zero entries map to zero.
fn dual_map(y: &[f64], r: f64) -> Vec<f64> {
    let scale = y.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    if scale == 0.0 {
        return vec![0.0; y.len()];
    }
    let mut out: Vec<f64> = y
        .iter()
        .map(|&v| {
            if v == 0.0 {
                0.0
            } else {
                v.signum() * (v.abs() / scale).powf(r - 1.0)
            }
        })
        .collect();
    let q = Exponent::new(r).expect("r > 1").conjugate();
    let nrm = vector_pnorm(&out, q);
    out.iter_mut().for_each(|v| *v /= nrm);
    out
}

fn normalize(mut x: Vec<f64>, p: Exponent) -> Vec<f64> {
    let nrm = vector_pnorm(&x, p);
    x.iter_mut().for_each(|v| *v /= nrm);
    x
}

/// Starting vectors: `e`, the two-level sign patterns `(1,…,1,−1,…,−1)`
/// with `m = 1, …, n−1` leading ones, then pseudo-random points of the
/// cube `[−1, 1]ⁿ`, all scaled to unit p-norm.
fn starts(n: usize, p: Exponent, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    out.push(normalize(vec![1.0; n], p));
    for m in 1..n {
        if out.len() == count {
            break;
        }
        let x = (0..n).map(|k| if k < m { 1.0 } else { -1.0 }).collect();
        out.push(normalize(x, p));
    }
    out.truncate(count);
    while out.len() < count {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        if x.iter().any(|&v| v != 0.0) {
            out.push(normalize(x, p));
        }
    }
    out
}

struct Run {
    value: f64,
    x: Vec<f64>,
    iterations: usize,
    converged: bool,
}

/// One power-method run from `x` (unit p-norm). `None` when the iteration
/// hits a zero vector.
fn power_run(a: &Mat, p: Exponent, x0: Vec<f64>, cfg: &EstimateConfig) -> Option<Run> {
    let q = p.conjugate();
    let mut x = x0;
    let mut y = a.mul_vec(&x);
    let mut value = vector_pnorm(&y, p);
    if value == 0.0 {
        return None;
    }
    for it in 1..=cfg.max_iter {
        let z = a.mul_vec_transposed(&dual_map(&y, p.value()));
        if z.iter().all(|&v| v == 0.0) {
            return None;
        }
        let x_new = dual_map(&z, q.value());
        let y_new = a.mul_vec(&x_new);
        let value_new = vector_pnorm(&y_new, p);
        let change = (value_new - value).abs();
        if value_new >= value {
            x = x_new;
            y = y_new;
            let old = value;
            value = value_new;
            if change <= cfg.rel_tol * old {
                return Some(Run {
                    value,
                    x,
                    iterations: it,
                    converged: true,
                });
            }
        } else {
            // Rounding can make the monotone sequence dip by a few ulps at
            // the fixed point; treat that as convergence.
            return Some(Run {
                value,
                x,
                iterations: it,
                converged: change <= cfg.rel_tol * value,
            });
        }
    }
    Some(Run {
        value,
        x,
        iterations: cfg.max_iter,
        converged: false,
    })
}

/// Certified lower bound on `‖A‖_{p→p}` for `1 < p < ∞` by the nonlinear
/// power method `x ← dual_q(Aᵀ dual_p(Ax))`, best over several restarts.
///
/// Restarts are combined by maximum value, ties going to the earliest
/// restart. A zero iterate is retried from a perturbed start.
pub fn opnorm_estimate(a: &Mat, p: Exponent, cfg: &EstimateConfig) -> Result<NormEstimate, OpNormError> {
    if p.value() <= 1.0 || p.is_inf() {
        return Err(OpNormError::EstimatorExponent(p));
    }
    if cfg.restarts == 0 {
        return Err(OpNormError::BadConfig("restarts must be at least 1"));
    }
    if cfg.max_iter == 0 || !(cfg.rel_tol > 0.0) {
        return Err(OpNormError::BadConfig("max_iter and rel_tol must be positive"));
    }
    let n = a.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let initial = starts(n, p, cfg.restarts, &mut rng);

    let mut best: Option<Run> = None;
    let mut iterations = 0;
    let mut any_converged = false;
    for x0 in initial {
        let mut start = x0;
        let mut run = None;
        for _attempt in 0..4 {
            run = power_run(a, p, start.clone(), cfg);
            if run.is_some() {
                break;
            }
            let perturbed = start.iter().map(|v| v + 1e-3 * rng.random_range(-1.0..1.0)).collect();
            start = normalize(perturbed, p);
        }
        let Some(run) = run else { continue };
        iterations += run.iterations;
        any_converged |= run.converged;
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }

    let (value, certificate) = match best {
        Some(run) => {
            let value = vector_pnorm(&a.mul_vec(&run.x), p) / vector_pnorm(&run.x, p);
            (value, run.x)
        }
        // Every start lands in the kernel; only possible for A = 0 in
        // practice, where 0 is exact.
        None => {
            any_converged = a.as_slice().iter().all(|&v| v == 0.0);
            (0.0, normalize(vec![1.0; n], p))
        }
    };
    let estimate = NormEstimate {
        value,
        certificate,
        iterations,
        restarts_used: cfg.restarts,
        method: NormMethod::PowerLowerBound,
        converged: any_converged,
    };
    if any_converged {
        Ok(estimate)
    } else {
        Err(OpNormError::NoConvergence {
            best: Box::new(estimate),
        })
    }
}
