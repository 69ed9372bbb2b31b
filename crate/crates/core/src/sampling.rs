//! Random test inputs: Sinkhorn-balanced matrices, random Birkhoff
//! mixtures and permutations.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded via
//! `SeedableRng::seed_from_u64(seed)`. That choice is part of the output
//! format: a given seed yields the same matrices on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matcore::{DoublyStochastic, Mat, MatError, Permutation};

/// Largest `n` accepted by [`enumerate_permutations`].
pub const ENUMERATION_MAX_N: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SamplingError {
    #[error("entry ({row}, {col}) is not strictly positive")]
    NonPositiveEntry { row: usize, col: usize },
    #[error("Sinkhorn balancing did not reach tolerance after {iterations} iterations (error {error})")]
    NoConvergence { iterations: usize, error: f64 },
    #[error("invalid sampler configuration: {0}")]
    BadConfig(&'static str),
    #[error("dimension {n} exceeds the limit {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Mat(#[from] MatError),
}

impl SamplingError {
    /// Stable snake_case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            SamplingError::NonPositiveEntry { .. } => "non_positive_entry",
            SamplingError::NoConvergence { .. } => "sinkhorn_no_convergence",
            SamplingError::BadConfig(_) => "bad_config",
            SamplingError::DimensionTooLarge { .. } => "dimension_too_large",
            SamplingError::Mat(e) => e.code(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub sinkhorn_tol: f64,
    pub sinkhorn_max_iter: usize,
    /// Number of permutations in a random Birkhoff mixture.
    pub mixture_terms: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            sinkhorn_tol: 1e-10,
            sinkhorn_max_iter: 100_000,
            mixture_terms: 4,
        }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<(), SamplingError> {
        if !(self.sinkhorn_tol > 0.0) {
            return Err(SamplingError::BadConfig("sinkhorn_tol must be positive"));
        }
        if self.sinkhorn_max_iter == 0 {
            return Err(SamplingError::BadConfig("sinkhorn_max_iter must be at least 1"));
        }
        if self.mixture_terms == 0 {
            return Err(SamplingError::BadConfig("mixture_terms must be at least 1"));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn balance_error(m: &Mat) -> f64 {
    m.row_sums()
        .into_iter()
        .chain(m.col_sums())
        .map(|s| (s - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Sinkhorn–Knopp balancing: alternate row and column normalization until
/// every row and column sum is within `cfg.sinkhorn_tol` of 1.
pub fn sinkhorn(m: &Mat, cfg: &SamplerConfig) -> Result<DoublyStochastic, SamplingError> {
    cfg.check()?;
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            if !(m.get(i, j) > 0.0) {
                return Err(SamplingError::NonPositiveEntry { row: i, col: j });
            }
        }
    }
    let mut a = m.clone();
    let mut err = balance_error(&a);
    let mut iter = 0;
    while err > cfg.sinkhorn_tol {
        if iter == cfg.sinkhorn_max_iter {
            return Err(SamplingError::NoConvergence {
                iterations: iter,
                error: err,
            });
        }
        let rows = a.row_sums();
        for (i, s) in rows.iter().enumerate() {
            for j in 0..n {
                let v = a.get(i, j) / s;
                a.set(i, j, v);
            }
        }
        let cols = a.col_sums();
        for i in 0..n {
            for (j, s) in cols.iter().enumerate() {
                let v = a.get(i, j) / s;
                a.set(i, j, v);
            }
        }
        err = balance_error(&a);
        iter += 1;
    }
    Ok(DoublyStochastic::from_trusted(a, cfg.sinkhorn_tol))
}

/// Matrix with entries `exp(u)`, `u` uniform on `[0, 1)`.
pub fn random_positive(n: usize, rng: &mut impl Rng) -> Mat {
    Mat::from_fn(n, |_, _| rng.random::<f64>().exp()).expect("finite entries")
}

/// `sinkhorn(random_positive(n))` with the generator seeded from `cfg`.
pub fn random_sinkhorn(n: usize, cfg: &SamplerConfig) -> Result<DoublyStochastic, SamplingError> {
    let mut rng = cfg.rng();
    sinkhorn(&random_positive(n, &mut rng), cfg)
}

/// Convex combination `Σ w_i P_i`. Weights must be nonnegative and sum to 1.
pub fn mixture(weights: &[f64], perms: &[Permutation]) -> Result<DoublyStochastic, SamplingError> {
    assert_eq!(weights.len(), perms.len(), "one weight per permutation");
    let n = perms.first().ok_or(SamplingError::BadConfig("empty mixture"))?.n();
    let mut acc = Mat::zeros(n);
    for (w, p) in weights.iter().zip(perms) {
        if p.n() != n {
            return Err(SamplingError::BadConfig("permutations of different sizes"));
        }
        if !(*w >= 0.0) {
            return Err(SamplingError::BadConfig("negative mixture weight"));
        }
        for (i, &j) in p.sigma().iter().enumerate() {
            let v = acc.get(i, j) + w;
            acc.set(i, j, v);
        }
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(SamplingError::BadConfig("mixture weights must sum to 1"));
    }
    Ok(DoublyStochastic::from_trusted(acc, 1e-12))
}

/// Draws `cfg.mixture_terms` permutations and Dirichlet(1, …, 1) weights
/// (normalized exponential variates) and returns their mixture.
pub fn random_birkhoff_mixture(n: usize, cfg: &SamplerConfig) -> Result<DoublyStochastic, SamplingError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let k = cfg.mixture_terms;
    let perms: Vec<Permutation> = (0..k).map(|_| shuffle(n, &mut rng)).collect();
    let mut weights: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = weights.iter().sum();
    if total > 0.0 {
        weights.iter_mut().for_each(|w| *w /= total);
    } else {
        weights.iter_mut().for_each(|w| *w = 1.0 / k as f64);
    }
    mixture(&weights, &perms)
}

fn shuffle(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    Permutation::from_vec_unchecked(sigma)
}

/// Fisher–Yates shuffle of the identity, deterministic per seed.
pub fn random_permutation(n: usize, seed: u64) -> Permutation {
    shuffle(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Same as [`random_permutation`] but drawing from a caller-owned generator.
pub fn random_permutation_with(n: usize, rng: &mut impl Rng) -> Permutation {
    shuffle(n, rng)
}

/// Iterator over all `n!` permutations in Heap's-algorithm order, starting
/// from the identity.
pub fn enumerate_permutations(n: usize) -> Result<HeapPermutations, SamplingError> {
    if n == 0 {
        return Err(SamplingError::Mat(MatError::EmptyMatrix));
    }
    if n > ENUMERATION_MAX_N {
        return Err(SamplingError::DimensionTooLarge {
            n,
            max: ENUMERATION_MAX_N,
        });
    }
    Ok(HeapPermutations {
        sigma: (0..n).collect(),
        counters: vec![0; n],
        i: 0,
        first: true,
    })
}

/// Iterative Heap's algorithm.
#[derive(Clone, Debug)]
pub struct HeapPermutations {
    sigma: Vec<usize>,
    counters: Vec<usize>,
    i: usize,
    first: bool,
}

impl Iterator for HeapPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.first {
            self.first = false;
            return Some(Permutation::from_vec_unchecked(self.sigma.clone()));
        }
        let n = self.sigma.len();
        while self.i < n {
            if self.counters[self.i] < self.i {
                if self.i % 2 == 0 {
                    self.sigma.swap(0, self.i);
                } else {
                    self.sigma.swap(self.counters[self.i], self.i);
                }
                self.counters[self.i] += 1;
                self.i = 0;
                return Some(Permutation::from_vec_unchecked(self.sigma.clone()));
            }
            self.counters[self.i] = 0;
            self.i += 1;
        }
        None
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{averager, validate_doubly_stochastic};
    use std::collections::BTreeSet;

    fn recursive_perms(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if rest.is_empty() {
            out.insert(prefix.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            recursive_perms(prefix, rest, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }

    #[test]
    fn sinkhorn_fixed_points() {
        let cfg = SamplerConfig::default();
        for n in 1..6 {
            let j = averager(n);
            assert_eq!(sinkhorn(j.mat(), &cfg).unwrap().mat(), j.mat());
            let ones = sinkhorn(&Mat::filled(n, 1.0), &cfg).unwrap();
            assert_eq!(ones.mat(), j.mat());
        }
    }

    #[test]
    fn sinkhorn_balances_random_input() {
        let cfg = SamplerConfig::with_seed(42);
        let d = random_sinkhorn(5, &cfg).unwrap();
        for s in d.row_sums().into_iter().chain(d.col_sums()) {
            assert!((s - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn sinkhorn_errors() {
        let cfg = SamplerConfig::default();
        let m = Mat::from_rows(&[[1.0, 0.0], [1.0, 1.0]]).unwrap();
        assert_eq!(
            sinkhorn(&m, &cfg).unwrap_err(),
            SamplingError::NonPositiveEntry { row: 0, col: 1 }
        );
        let tight = SamplerConfig {
            sinkhorn_max_iter: 1,
            sinkhorn_tol: 1e-300,
            ..SamplerConfig::with_seed(3)
        };
        let mut rng = tight.rng();
        assert!(matches!(
            sinkhorn(&random_positive(4, &mut rng), &tight),
            Err(SamplingError::NoConvergence { iterations: 1, .. })
        ));
    }

    #[test]
    fn mixture_examples() {
        let one = SamplerConfig {
            mixture_terms: 1,
            ..SamplerConfig::with_seed(9)
        };
        let d = random_birkhoff_mixture(5, &one).unwrap();
        assert!(Permutation::from_mat(d.mat()).is_some());

        let all: Vec<Permutation> = enumerate_permutations(4).unwrap().collect();
        let w = vec![1.0 / 24.0; 24];
        // weights are not exactly 1 in floating point, but well inside 1e-12
        let d = mixture(&w, &all).unwrap();
        assert!(d.max_abs_diff(averager(4).mat()) <= 1e-12);

        let cfg = SamplerConfig {
            mixture_terms: 3,
            ..SamplerConfig::with_seed(7)
        };
        let d = random_birkhoff_mixture(4, &cfg).unwrap();
        validate_doubly_stochastic(d.mat(), 1e-12).unwrap();
    }

    #[test]
    fn enumeration_counts_and_matches_recursive_generator() {
        assert_eq!(enumerate_permutations(1).unwrap().count(), 1);
        let three: BTreeSet<_> = enumerate_permutations(3).unwrap().map(|p| p.sigma().to_vec()).collect();
        assert_eq!(three.len(), 6);
        for n in 1..=8 {
            assert_eq!(enumerate_permutations(n).unwrap().count(), factorial(n));
        }
        let heap: Vec<Vec<usize>> = enumerate_permutations(5).unwrap().map(|p| p.sigma().to_vec()).collect();
        let heap_set: BTreeSet<_> = heap.iter().cloned().collect();
        assert_eq!(heap.len(), heap_set.len());
        let mut reference = BTreeSet::new();
        recursive_perms(&mut vec![], &mut (0..5).collect(), &mut reference);
        assert_eq!(heap_set, reference);
        assert!(matches!(
            enumerate_permutations(11),
            Err(SamplingError::DimensionTooLarge { n: 11, max: 10 })
        ));
    }

    #[test]
    fn random_permutation_is_deterministic_and_uniform() {
        assert_eq!(random_permutation(1, 5), Permutation::identity(1));
        assert_eq!(random_permutation(6, 11), random_permutation(6, 11));

        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 10_000;
        let mut counts = std::collections::HashMap::new();
        for _ in 0..draws {
            *counts.entry(random_permutation_with(4, &mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 24);
        let expected = draws as f64 / 24.0;
        let sigma = (expected * (1.0 - 1.0 / 24.0)).sqrt();
        for &c in counts.values() {
            assert!((c as f64 - expected).abs() <= 5.0 * sigma, "count {c}");
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let cfg = SamplerConfig::with_seed(77);
        assert_eq!(random_sinkhorn(6, &cfg).unwrap(), random_sinkhorn(6, &cfg).unwrap());
        assert_eq!(
            random_birkhoff_mixture(6, &cfg).unwrap(),
            random_birkhoff_mixture(6, &cfg).unwrap()
        );
    }

    #[test]
    fn sampler_outputs_validate() {
        for seed in 0..40 {
            let cfg = SamplerConfig::with_seed(seed);
            let n = 1 + (seed as usize % 8);
            validate_doubly_stochastic(random_sinkhorn(n, &cfg).unwrap().mat(), 1e-9).unwrap();
            validate_doubly_stochastic(random_birkhoff_mixture(n, &cfg).unwrap().mat(), 1e-9).unwrap();
        }
    }
}
