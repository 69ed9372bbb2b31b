use serde::{Deserialize, Serialize};

use super::{Mat, MatError};

/// Permutation matrix in one-line form: row `i` has its single 1 in
/// column `sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    sigma: Vec<usize>,
}

impl Permutation {
    pub fn new(sigma: Vec<usize>) -> Result<Self, MatError> {
        let n = sigma.len();
        if n == 0 {
            return Err(MatError::EmptyMatrix);
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(MatError::NotAPermutation(sigma));
            }
            seen[s] = true;
        }
        Ok(Self { sigma })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0);
        Self {
            sigma: (0..n).collect(),
        }
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.sigma.swap(a, b);
        p
    }

    pub(crate) fn from_vec_unchecked(sigma: Vec<usize>) -> Self {
        debug_assert!(Self::new(sigma.clone()).is_ok());
        Self { sigma }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    #[inline]
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Column holding the 1 in row `i`.
    #[inline]
    pub fn col_of(&self, row: usize) -> usize {
        self.sigma[row]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s] = i;
        }
        Self { sigma: inv }
    }

    /// Permutation matrix of `self · other`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            sigma: self.sigma.iter().map(|&s| other.sigma[s]).collect(),
        }
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.n();
        let mut m = Mat::zeros(n);
        for (i, &j) in self.sigma.iter().enumerate() {
            m.set(i, j, 1.0);
        }
        m
    }

    /// Recognizes an exact 0/1 permutation matrix.
    pub fn from_mat(m: &Mat) -> Option<Self> {
        let n = m.n();
        let mut sigma = Vec::with_capacity(n);
        for row in m.rows() {
            let mut col = None;
            for (j, &v) in row.iter().enumerate() {
                if v == 1.0 && col.is_none() {
                    col = Some(j);
                } else if v != 0.0 {
                    return None;
                }
            }
            sigma.push(col?);
        }
        Self::new(sigma).ok()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = MatError;

    fn try_from(sigma: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(sigma)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.sigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_bijection() {
        assert!(Permutation::new(vec![1, 0, 2]).is_ok());
        assert!(matches!(
            Permutation::new(vec![0, 0, 2]),
            Err(MatError::NotAPermutation(_))
        ));
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
    }

    #[test]
    fn matrix_round_trip_and_algebra() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        let m = p.to_mat();
        assert_eq!(Permutation::from_mat(&m), Some(p.clone()));
        assert_eq!(&p.to_mat() * &p.inverse().to_mat(), Mat::identity(3));
        let q = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&q).to_mat(), &p.to_mat() * &q.to_mat());
        assert_eq!(Permutation::from_mat(&Mat::filled(3, 1.0 / 3.0)), None);
    }

    #[test]
    fn serializes_as_plain_array() {
        let p = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0]");
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
