//! Minimal bounding-ball radius `r_p(D) = max_P ‖D − P‖_p`.

use rayon::prelude::*;

use super::{ChebError, RadiusMethod, RadiusReport};
use crate::matcore::{DoublyStochastic, Exponent, Permutation};
use crate::opnorm::{interpolation_upper_bound, opnorm_value, EstimateConfig};
use crate::sampling::enumerate_permutations;

/// Largest `n` for which all `n!` permutations are enumerated.
pub const ENUMERATION_MAX_N: usize = 8;

/// Permutation with a 1 at `(row, col)`: the transposition of `row` and `col`.
fn through(n: usize, row: usize, col: usize) -> Permutation {
    Permutation::transposition(n, row, col)
}

/// `r_1(D) = 2(1 − min d_ij)`, attained by any permutation through a
/// minimal entry.
pub fn bounding_radius_l1(d: &DoublyStochastic) -> RadiusReport {
    let (min, row, col) = d.min_entry();
    RadiusReport::exact(
        2.0 * (1.0 - min),
        RadiusMethod::FormulaP1,
        Some(through(d.n(), row, col)),
    )
}

/// `r_∞(D)`; same value and maximizers as `r_1`, since `‖A‖_∞ = ‖Aᵀ‖_1`
/// and `Dᵀ` has the same minimal entry.
pub fn bounding_radius_linf(d: &DoublyStochastic) -> RadiusReport {
    RadiusReport {
        method: RadiusMethod::FormulaPinf,
        ..bounding_radius_l1(d)
    }
}

/// Brute force over all `n!` permutations. Exact norms for `p ∈ {1, 2, ∞}`,
/// power-method lower bounds otherwise (then `upper_bound` comes from the
/// Riesz–Thorin interpolation bound). Ties go to the lexicographically
/// smallest permutation, so the result does not depend on scheduling.
pub fn bounding_radius_enumerate(
    d: &DoublyStochastic,
    p: Exponent,
    cfg: &EstimateConfig,
) -> Result<RadiusReport, ChebError> {
    let n = d.n();
    if n > ENUMERATION_MAX_N {
        return Err(ChebError::Dimension {
            n,
            min: 1,
            max: ENUMERATION_MAX_N,
        });
    }
    let perms: Vec<Permutation> = enumerate_permutations(n)?.collect();
    let scored = perms
        .into_par_iter()
        .map(|perm| {
            let diff = d.mat() - &perm.to_mat();
            let value = opnorm_value(&diff, p, cfg)?.value;
            let upper = if p.has_exact_norm() {
                value
            } else {
                interpolation_upper_bound(&diff, p)
            };
            Ok((value, upper, perm))
        })
        .collect::<Result<Vec<_>, ChebError>>()?;

    let upper = scored.iter().map(|s| s.1).fold(0.0, f64::max);
    let (value, _, perm) = scored
        .into_iter()
        .reduce(|a, b| match a.0.total_cmp(&b.0) {
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Equal => {
                if b.2 < a.2 {
                    b
                } else {
                    a
                }
            }
        })
        .expect("n! >= 1");
    Ok(RadiusReport {
        value,
        method: RadiusMethod::PermutationEnumeration,
        lower_bound: value,
        upper_bound: upper.max(value),
        maximizer: Some(perm),
    })
}
