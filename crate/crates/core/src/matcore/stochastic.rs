use std::ops::Deref;

use super::{Mat, MatError, Permutation};

/// Default tolerance for [`validate_doubly_stochastic`].
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-9;

/// A matrix checked to lie in the Birkhoff polytope: nonnegative entries,
/// every row and column summing to 1 (within `tol_used`).
#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochastic {
    mat: Mat,
    tol_used: f64,
}

impl DoublyStochastic {
    #[inline]
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    #[inline]
    pub fn tol_used(&self) -> f64 {
        self.tol_used
    }

    pub fn into_mat(self) -> Mat {
        self.mat
    }

    /// Trusted constructor for matrices doubly stochastic by construction.
    pub(crate) fn from_trusted(mat: Mat, tol_used: f64) -> Self {
        Self { mat, tol_used }
    }
}

impl Deref for DoublyStochastic {
    type Target = Mat;

    fn deref(&self) -> &Mat {
        &self.mat
    }
}

impl From<&Permutation> for DoublyStochastic {
    fn from(p: &Permutation) -> Self {
        Self::from_trusted(p.to_mat(), 0.0)
    }
}

/// Checks membership in the Birkhoff polytope.
///
/// Entries in `[-tol, 0)` are clamped to zero and entries in `(1, 1+tol]`
/// to one. The clamped matrix is then rebalanced by one row pass and one
/// column pass, but only when that moves no entry by more than `tol`.
pub fn validate_doubly_stochastic(m: &Mat, tol: f64) -> Result<DoublyStochastic, MatError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(MatError::BadTolerance(tol));
    }
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            if !v.is_finite() {
                return Err(MatError::NonFinite { row: i, col: j });
            }
            if v < -tol {
                return Err(MatError::NegativeEntry {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    for (i, s) in m.row_sums().into_iter().enumerate() {
        if (s - 1.0).abs() > tol {
            return Err(MatError::RowSum { row: i, sum: s });
        }
    }
    for (j, s) in m.col_sums().into_iter().enumerate() {
        if (s - 1.0).abs() > tol {
            return Err(MatError::ColSum { col: j, sum: s });
        }
    }

    let mut clamped = m.clone();
    for v in clamped.data_mut() {
        *v = v.clamp(0.0, 1.0);
    }
    let rebalanced = rebalance_once(&clamped);
    let mat = match rebalanced {
        Some(r) if r.max_abs_diff(&clamped) <= tol => r,
        _ => clamped,
    };
    Ok(DoublyStochastic { mat, tol_used: tol })
}

fn rebalance_once(m: &Mat) -> Option<Mat> {
    let n = m.n();
    let mut out = m.clone();
    let rows = out.row_sums();
    if rows.iter().any(|&s| s <= 0.0) {
        return None;
    }
    for (i, s) in rows.into_iter().enumerate() {
        for j in 0..n {
            let v = out.get(i, j) / s;
            out.set(i, j, v);
        }
    }
    let cols = out.col_sums();
    if cols.iter().any(|&s| s <= 0.0) {
        return None;
    }
    for i in 0..n {
        for (j, s) in cols.iter().enumerate() {
            let v = (out.get(i, j) / s).min(1.0);
            out.set(i, j, v);
        }
    }
    Some(out)
}

/// The averaging matrix `J_n` with every entry equal to `1/n`.
pub fn averager(n: usize) -> DoublyStochastic {
    DoublyStochastic::from_trusted(Mat::filled(n, 1.0 / n as f64), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_doubly_stochastic() {
        let d = validate_doubly_stochastic(&Mat::identity(3), 1e-9).unwrap();
        assert_eq!(d.mat(), &Mat::identity(3));
    }

    #[test]
    fn rejects_bad_row_sum() {
        let m = Mat::from_rows(&[[0.5, 0.5], [0.5, 0.6]]).unwrap();
        assert!(matches!(
            validate_doubly_stochastic(&m, 1e-9),
            Err(MatError::RowSum { row: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_col_sum_and_negative() {
        let m = Mat::from_rows(&[[0.6, 0.4], [0.6, 0.4]]).unwrap();
        assert!(matches!(
            validate_doubly_stochastic(&m, 1e-9),
            Err(MatError::ColSum { col: 0, .. })
        ));
        let m = Mat::from_rows(&[[1.1, -0.1], [-0.1, 1.1]]).unwrap();
        assert!(matches!(
            validate_doubly_stochastic(&m, 1e-9),
            Err(MatError::NegativeEntry { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            validate_doubly_stochastic(&Mat::identity(2), 0.0),
            Err(MatError::BadTolerance(_))
        ));
    }

    #[test]
    fn averager_examples() {
        assert_eq!(averager(1).mat().to_rows(), vec![vec![1.0]]);
        assert_eq!(averager(2).mat().to_rows(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(averager(3).as_slice().iter().all(|&v| v == 1.0 / 3.0));
        let j4 = validate_doubly_stochastic(averager(4).mat(), 1e-9).unwrap();
        assert!(j4.as_slice().iter().all(|&v| v == 0.25));
    }

    #[test]
    fn clamps_tiny_negatives() {
        let e = 1e-11;
        let m = Mat::from_rows(&[[1.0 + e, -e], [-e, 1.0 + e]]).unwrap();
        let d = validate_doubly_stochastic(&m, 1e-9).unwrap();
        assert!(d.as_slice().iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(d.max_abs_diff(&Mat::identity(2)) <= 1e-9);
    }
}
