//! Brute-force angular search for `n ∈ {2, 3}`, independent of the power
//! method.

use std::f64::consts::PI;

use super::{NormEstimate, NormMethod, OpNormError};
use crate::matcore::{vector_pnorm, Exponent, Mat};

pub const ORACLE_MIN_GRID: usize = 360;

/// Local maxima refined per search.
const REFINED_PEAKS: usize = 8;

fn ratio(a: &Mat, u: &[f64], p: Exponent) -> f64 {
    let n = u.len();
    let mut y = [0.0; 3];
    for (i, yi) in y.iter_mut().enumerate().take(n) {
        *yi = a.row(i).iter().zip(u).map(|(x, v)| x * v).sum();
    }
    vector_pnorm(&y[..n], p) / vector_pnorm(u, p)
}

fn circle(theta: f64) -> [f64; 2] {
    [theta.cos(), theta.sin()]
}

fn sphere(theta: f64, phi: f64) -> [f64; 3] {
    let s = theta.sin();
    [s * phi.cos(), s * phi.sin(), theta.cos()]
}

/// Golden-section maximization of `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > 1e-14 {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    let t = 0.5 * (lo + hi);
    (t, f(t))
}

/// Compass search over `(θ, φ)` with eight directions. The step doubles
/// (up to `step0`) after a successful move and halves otherwise, stopping
/// once it drops below `1e-13`.
fn compass_max(f: impl Fn(f64, f64) -> f64, mut t: f64, mut s: f64, step0: f64) -> (f64, f64, f64) {
    let dirs = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
        (-1.0, -1.0),
    ];
    let mut best = f(t, s);
    let mut step = step0;
    while step > 1e-13 {
        let mut moved = false;
        for (dt, ds) in dirs {
            let (nt, ns) = (t + dt * step, s + ds * step);
            let v = f(nt, ns);
            if v > best {
                best = v;
                t = nt;
                s = ns;
                moved = true;
                break;
            }
        }
        if moved {
            step = (2.0 * step).min(step0);
        } else {
            step *= 0.5;
        }
    }
    (t, s, best)
}

fn finish(a: &Mat, p: Exponent, u: Vec<f64>, samples: usize) -> NormEstimate {
    let nrm = vector_pnorm(&u, p);
    let certificate: Vec<f64> = u.into_iter().map(|v| v / nrm).collect();
    let value = vector_pnorm(&a.mul_vec(&certificate), p);
    NormEstimate {
        value,
        certificate,
        iterations: samples,
        restarts_used: 0,
        method: NormMethod::ExhaustiveOracle,
        converged: true,
    }
}

/// Maximizes `‖Ax‖_p / ‖x‖_p` over directions in ℝ² or ℝ³.
///
/// `n = 2`: `x = (cos θ, sin θ)` with `θ` on `grid` equally spaced points
/// of `[0, π)`; the best local maxima are refined by golden section.
/// `n = 3`: spherical angles over the upper hemisphere with angular step
/// `2π/grid` in both directions; the best local maxima are refined by
/// compass search. Antipodal directions give the same ratio, which is why
/// half the circle/sphere suffices.
pub fn opnorm_oracle_small(a: &Mat, p: Exponent, grid: usize) -> Result<NormEstimate, OpNormError> {
    if grid < ORACLE_MIN_GRID {
        return Err(OpNormError::BadConfig("oracle grid must be at least 360"));
    }
    match a.n() {
        2 => Ok(oracle_2d(a, p, grid)),
        3 => Ok(oracle_3d(a, p, grid)),
        n => Err(OpNormError::DimensionTooLarge(n)),
    }
}

fn oracle_2d(a: &Mat, p: Exponent, grid: usize) -> NormEstimate {
    let h = PI / grid as f64;
    let f = |t: f64| ratio(a, &circle(t), p);
    let vals: Vec<f64> = (0..grid).map(|k| f(k as f64 * h)).collect();
    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&k| {
            let prev = vals[(k + grid - 1) % grid];
            let next = vals[(k + 1) % grid];
            vals[k] >= prev && vals[k] >= next
        })
        .collect();
    peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    peaks.truncate(REFINED_PEAKS);

    let mut best = (0.0, vals[0]);
    for k in 0..grid {
        if vals[k] > best.1 {
            best = (k as f64 * h, vals[k]);
        }
    }
    for k in peaks {
        let t0 = k as f64 * h;
        let (t, v) = golden_max(f, t0 - h, t0 + h);
        if v > best.1 {
            best = (t, v);
        }
    }
    finish(a, p, circle(best.0).to_vec(), grid)
}

fn oracle_3d(a: &Mat, p: Exponent, grid: usize) -> NormEstimate {
    let h = 2.0 * PI / grid as f64;
    let n_theta = grid / 4 + 1;
    let n_phi = grid;
    let f = |t: f64, s: f64| ratio(a, &sphere(t, s), p);
    let vals: Vec<f64> = (0..n_theta)
        .flat_map(|i| (0..n_phi).map(move |j| (i, j)))
        .map(|(i, j)| f(i as f64 * h, j as f64 * h))
        .collect();
    let at = |i: usize, j: usize| vals[i * n_phi + j];

    let mut peaks: Vec<(usize, usize)> = Vec::new();
    for i in 0..n_theta {
        for j in 0..n_phi {
            let v = at(i, j);
            let mut is_peak = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = i as i64 + di;
                    if ni < 0 || ni >= n_theta as i64 {
                        continue;
                    }
                    let nj = (j as i64 + dj).rem_euclid(n_phi as i64) as usize;
                    if at(ni as usize, nj) > v {
                        is_peak = false;
                        break 'nb;
                    }
                }
            }
            if is_peak {
                peaks.push((i, j));
            }
        }
    }
    peaks.sort_by(|a, b| at(b.0, b.1).total_cmp(&at(a.0, a.1)));
    peaks.truncate(REFINED_PEAKS);

    let mut best = (0.0, 0.0, at(0, 0));
    for &(i, j) in &peaks {
        let (t, s, v) = compass_max(f, i as f64 * h, j as f64 * h, h);
        if v > best.2 {
            best = (t, s, v);
        }
    }
    finish(a, p, sphere(best.0, best.1).to_vec(), n_theta * n_phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::averager;

    #[test]
    fn identity_has_unit_norm() {
        for p in [1.0, 1.5, 2.0, 3.7, f64::INFINITY] {
            let p = Exponent::new(p).unwrap();
            let est = opnorm_oracle_small(&Mat::identity(2), p, 360).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn difference_matrix_two_norm() {
        let a = Mat::from_rows(&[[1.0, -1.0], [-1.0, 1.0]]).unwrap();
        let est = opnorm_oracle_small(&a, Exponent::TWO, 360).unwrap();
        assert!((est.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn averager_minus_identity_p1() {
        let a = averager(3).mat() - &Mat::identity(3);
        let est = opnorm_oracle_small(&a, Exponent::ONE, 360).unwrap();
        assert!((est.value - 4.0 / 3.0).abs() < 1e-9, "{}", est.value);
    }

    #[test]
    fn rejects_large_or_coarse_inputs() {
        assert_eq!(
            opnorm_oracle_small(&Mat::identity(4), Exponent::TWO, 360),
            Err(OpNormError::DimensionTooLarge(4))
        );
        assert!(matches!(
            opnorm_oracle_small(&Mat::identity(2), Exponent::TWO, 100),
            Err(OpNormError::BadConfig(_))
        ));
    }
}
