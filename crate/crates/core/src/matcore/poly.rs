//! Characteristic polynomials and a symmetric eigensolver.

use super::{Mat, MatError};

/// Largest dimension accepted by [`char_poly`].
pub const CHAR_POLY_MAX_N: usize = 64;

/// Monic characteristic polynomial `det(λI − M)`, coefficients in
/// descending powers: `coeffs[0] = 1` is the coefficient of `λⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * x + c)
    }
}

/// Faddeev–LeVerrier recursion:
/// `M_k = A·M_{k-1} + c_{k-1}·I`, `c_k = −tr(A·M_k)/k`, starting from
/// `M_0 = 0`, `c_0 = 1`.
pub fn char_poly(m: &Mat) -> Result<CharPoly, MatError> {
    let n = m.n();
    if n > CHAR_POLY_MAX_N {
        return Err(MatError::DimensionTooLarge {
            n,
            max: CHAR_POLY_MAX_N,
        });
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    let mut mk = Mat::zeros(n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{k-1} I
        let mut next = m * &mk;
        let c_prev = coeffs[k - 1];
        for i in 0..n {
            let v = next.get(i, i) + c_prev;
            next.set(i, i, v);
        }
        let am = m * &next;
        coeffs.push(-am.trace() / k as f64);
        mk = next;
    }
    Ok(CharPoly { coeffs })
}

/// Product of two polynomials given in descending coefficient order.
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations. Eigenvalues are returned in descending order; column `k` of
/// the returned vectors (stored as `vectors[k]`) pairs with `values[k]`.
pub fn symmetric_eigen(m: &Mat) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = m.n();
    let mut a = m.to_rows();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| f64::from(i == j)).collect()).collect();
    let scale = m.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale * 1e-2 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j][j].total_cmp(&a[i][i]));
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order.iter().map(|&k| (0..n).map(|i| v[i][k]).collect()).collect();
    (values, vectors)
}

/// Frobenius norm, `sqrt(Σ a_ij²)`.
pub fn frobenius_norm(m: &Mat) -> f64 {
    m.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::averager;
    use proptest::prelude::*;

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&Mat::identity(2)).unwrap().coeffs(), &[1.0, -2.0, 1.0]);
        let j2 = averager(2);
        assert_eq!(char_poly(j2.mat()).unwrap().coeffs(), &[1.0, -1.0, 0.0]);
        let swap = Mat::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(char_poly(&swap).unwrap().coeffs(), &[1.0, 0.0, -1.0]);
        assert!(matches!(
            char_poly(&Mat::zeros(65)),
            Err(MatError::DimensionTooLarge { n: 65, .. })
        ));
    }

    #[test]
    fn char_poly_of_triangular_matrix() {
        // eigenvalues 2, 3, -1 -> (λ-2)(λ-3)(λ+1) = λ³ - 4λ² + λ + 6
        let m = Mat::from_rows(&[[2.0, 5.0, 1.0], [0.0, 3.0, 7.0], [0.0, 0.0, -1.0]]).unwrap();
        let c = char_poly(&m).unwrap();
        assert_eq!(c.degree(), 3);
        for (a, b) in c.coeffs().iter().zip([1.0, -4.0, 1.0, 6.0]) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn frobenius_examples() {
        assert!((frobenius_norm(&Mat::identity(3)) - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(frobenius_norm(&Mat::zeros(4)), 0.0);
        for n in 2..8 {
            let d = averager(n).mat() - &Mat::identity(n);
            assert!((frobenius_norm(&d) - ((n - 1) as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_diagonalizes() {
        let m = Mat::from_rows(&[[2.0, 1.0], [1.0, 2.0]]).unwrap();
        let (vals, vecs) = symmetric_eigen(&m);
        assert!((vals[0] - 3.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        let av = m.mul_vec(&vecs[0]);
        for (a, b) in av.iter().zip(&vecs[0]) {
            assert!((a - 3.0 * b).abs() < 1e-13);
        }
    }

    fn symmetric(n: usize) -> impl Strategy<Value = Mat> {
        prop::collection::vec(-2.0f64..2.0, n * n).prop_map(move |v| {
            let a = Mat::new(n, v).unwrap();
            (&a + &a.transpose()).scale(0.5)
        })
    }

    proptest! {
        #[test]
        fn char_poly_vanishes_at_jacobi_eigenvalues(m in (1usize..7).prop_flat_map(symmetric)) {
            let c = char_poly(&m).unwrap();
            let (vals, _) = symmetric_eigen(&m);
            for lam in vals {
                prop_assert!(c.eval(lam).abs() <= 1e-6, "p({lam}) = {}", c.eval(lam));
            }
        }
    }
}
