//! Birkhoff–von Neumann decomposition: writing a doubly stochastic matrix
//! as a convex combination of permutation matrices, and recombining one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcore::{DoublyStochastic, Mat, Permutation};

/// Support threshold used when the caller has no preference.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BirkhoffError {
    #[error("no perfect matching on entries above {tol} (remaining mass {remaining}); input is not doubly stochastic to this tolerance")]
    MatchingFailed { tol: f64, remaining: f64 },
    #[error("permutation of size {found} in a decomposition of size {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

impl BirkhoffError {
    /// Stable snake_case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            BirkhoffError::MatchingFailed { .. } => "matching_failed",
            BirkhoffError::SizeMismatch { .. } => "size_mismatch",
            BirkhoffError::BadTolerance(_) => "bad_tolerance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub alpha: f64,
    pub sigma: Permutation,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirkhoffDecomposition {
    pub terms: Vec<Term>,
    /// Max entrywise `|Σ α_i P_i − D|`.
    pub residual: f64,
}

impl BirkhoffDecomposition {
    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.alpha).sum()
    }

    /// Upper bound `n² − 2n + 2` on the number of terms.
    pub fn term_bound(n: usize) -> usize {
        // (n − 1)² + 1, written to stay in range for n ≤ 1
        let m = n.saturating_sub(1);
        m * m + 1
    }
}

/// Kuhn's augmenting-path matching on the bipartite graph with an edge
/// `(i, j)` wherever `w[i][j] > tol`. Rows are scanned in index order.
/// Returns `row -> col` when a perfect matching exists.
fn perfect_matching(w: &Mat, tol: f64) -> Option<Vec<usize>> {
    let n = w.n();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];

    fn augment(row: usize, w: &Mat, tol: f64, visited: &mut [bool], col_owner: &mut [Option<usize>]) -> bool {
        for col in 0..w.n() {
            if w.get(row, col) > tol && !visited[col] {
                visited[col] = true;
                let free = match col_owner[col] {
                    None => true,
                    Some(other) => augment(other, w, tol, visited, col_owner),
                };
                if free {
                    col_owner[col] = Some(row);
                    return true;
                }
            }
        }
        false
    }

    for row in 0..n {
        visited.iter_mut().for_each(|v| *v = false);
        if !augment(row, w, tol, &mut visited, &mut col_owner) {
            return None;
        }
    }
    let mut sigma = vec![0; n];
    for (col, owner) in col_owner.into_iter().enumerate() {
        sigma[owner.expect("perfect matching covers every column")] = col;
    }
    Some(sigma)
}

/// Greedy decomposition: repeatedly find a perfect matching on the support
/// of the remainder, peel off the smallest matched entry times that
/// permutation, and zero the entry that attained the minimum.
///
/// Entries at or below `tol` count as zero. Once no perfect matching is left
/// the remaining mass must be within what the input's own validation
/// tolerance allows (`n · tol_used`); otherwise the input was not doubly
/// stochastic and `MatchingFailed` is returned.
pub fn birkhoff_decompose(d: &DoublyStochastic, tol: f64) -> Result<BirkhoffDecomposition, BirkhoffError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(BirkhoffError::BadTolerance(tol));
    }
    let n = d.n();
    let mut rest = d.mat().clone();
    let mut terms = Vec::new();
    let slack = (n as f64 * d.tol_used()).max(tol);

    loop {
        let remaining = rest.row_sums().into_iter().fold(0.0, f64::max);
        let Some(sigma) = perfect_matching(&rest, tol) else {
            if remaining <= slack {
                break;
            }
            return Err(BirkhoffError::MatchingFailed { tol, remaining });
        };
        let (alpha, argmin_row) = sigma
            .iter()
            .enumerate()
            .map(|(i, &j)| (rest.get(i, j), i))
            .fold((f64::INFINITY, 0), |best, cur| if cur.0 < best.0 { cur } else { best });
        debug_assert!(sigma.iter().enumerate().all(|(i, &j)| rest.get(i, j) >= alpha));
        for (i, &j) in sigma.iter().enumerate() {
            let v = if i == argmin_row { 0.0 } else { rest.get(i, j) - alpha };
            rest.set(i, j, v.max(0.0));
        }
        terms.push(Term {
            alpha,
            sigma: Permutation::from_vec_unchecked(sigma),
        });
    }

    let mut decomposition = BirkhoffDecomposition { terms, residual: 0.0 };
    let rebuilt = recombine(&decomposition, n)?;
    decomposition.residual = rebuilt.max_abs_diff(d.mat());
    Ok(decomposition)
}

/// `Σ α_i P_i` as a dense matrix.
pub fn recombine(decomposition: &BirkhoffDecomposition, n: usize) -> Result<Mat, BirkhoffError> {
    let mut acc = Mat::zeros(n);
    for term in &decomposition.terms {
        if term.sigma.n() != n {
            return Err(BirkhoffError::SizeMismatch {
                expected: n,
                found: term.sigma.n(),
            });
        }
        for (i, &j) in term.sigma.sigma().iter().enumerate() {
            let v = acc.get(i, j) + term.alpha;
            acc.set(i, j, v);
        }
    }
    Ok(acc)
}
