//! Dense square matrices over `f64`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::MatError;

/// Dense `n×n` real matrix stored row-major.
///
/// Every entry is finite; constructors reject NaN and infinities.
#[derive(Clone, PartialEq)]
pub struct Mat {
    n: usize,
    data: Vec<f64>,
}

impl Mat {
    /// Builds a matrix from row-major storage of length `n*n`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, MatError> {
        if n == 0 {
            return Err(MatError::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(MatError::Shape {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(MatError::NonFinite {
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a list of rows; every row must have as many
    /// entries as there are rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(MatError::RaggedRow {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn filled(n: usize, value: f64) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        assert!(value.is_finite());
        Self {
            n,
            data: vec![value; n * n],
        }
    }

    /// The identity `I_n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Builds a matrix entry by entry from `f(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self, MatError> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::new(n, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    /// Row-major view of the entries.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.n + col] = value;
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `A·x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must match matrix dimension");
        self.rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Aᵀ·y` without materializing the transpose.
    pub fn mul_vec_transposed(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.n, "vector length must match matrix dimension");
        let mut out = vec![0.0; self.n];
        for (row, &yi) in self.rows().zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.rows().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for row in self.rows() {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a;
            }
        }
        out
    }

    /// Smallest entry together with its (row, col), first in row-major order.
    pub fn min_entry(&self) -> (f64, usize, usize) {
        let (pos, &v) = self
            .data
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, &f64)>, (k, v)| match best {
                Some((_, b)) if b <= v => best,
                _ => Some((k, v)),
            })
            .expect("matrix is never empty");
        (v, pos / self.n, pos % self.n)
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Mat) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Maximum absolute column sum (the ℓ1 operator norm).
    pub fn max_abs_col_sum(&self) -> f64 {
        let mut sums = vec![0.0; self.n];
        for row in self.rows() {
            for (s, a) in sums.iter_mut().zip(row) {
                *s += a.abs();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Maximum absolute row sum (the ℓ∞ operator norm).
    pub fn max_abs_row_sum(&self) -> f64 {
        self.rows()
            .map(|r| r.iter().map(|a| a.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Row and column permutation `P·A·Q` where `P` and `Q` are given as
    /// one-line permutations (row `i` of `P` has its 1 in column `p[i]`).
    pub fn permuted(&self, p: &[usize], q: &[usize]) -> Self {
        let n = self.n;
        assert!(p.len() == n && q.len() == n);
        // (PAQ)_{ij} = A_{p[i], q^{-1}[j]}
        let mut q_inv = vec![0; n];
        for (j, &qj) in q.iter().enumerate() {
            q_inv[qj] = j;
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.get(p[i], q_inv[j]);
            }
        }
        out
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mat")
            .field("n", &self.n)
            .field("rows", &self.to_rows())
            .finish()
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Mat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;

    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Mat {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(Mat::new(0, vec![]), Err(MatError::EmptyMatrix)));
        assert!(matches!(
            Mat::new(2, vec![1.0; 3]),
            Err(MatError::Shape { expected: 4, found: 3 })
        ));
        assert!(matches!(
            Mat::new(2, vec![1.0, f64::NAN, 0.0, 0.0]),
            Err(MatError::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(
            Mat::from_rows(&[vec![1.0, 2.0], vec![3.0]]),
            Err(MatError::RaggedRow { row: 1, .. })
        ));
    }

    #[test]
    fn products_and_norms() {
        let a = Mat::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let b = Mat::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!((&a * &b).to_rows(), vec![vec![2.0, 1.0], vec![4.0, 3.0]]);
        assert_eq!(a.mul_vec(&[1.0, 1.0]), vec![3.0, 7.0]);
        assert_eq!(a.mul_vec_transposed(&[1.0, 1.0]), vec![4.0, 6.0]);
        assert_eq!(a.max_abs_col_sum(), 6.0);
        assert_eq!(a.max_abs_row_sum(), 7.0);
        assert_eq!(a.transpose().get(0, 1), 3.0);
        assert_eq!(a.min_entry(), (1.0, 0, 0));
    }

    #[test]
    fn permuted_matches_explicit_products() {
        let a = Mat::from_fn(3, |i, j| (3 * i + j) as f64).unwrap();
        let p = [2, 0, 1];
        let q = [1, 2, 0];
        let pm = Mat::from_fn(3, |i, j| f64::from(p[i] == j)).unwrap();
        let qm = Mat::from_fn(3, |i, j| f64::from(q[i] == j)).unwrap();
        let expected = &(&pm * &a) * &qm;
        assert_eq!(a.permuted(&p, &q), expected);
    }
}
