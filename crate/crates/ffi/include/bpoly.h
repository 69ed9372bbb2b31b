#ifndef BPOLY_H
#define BPOLY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum BpStatus {
  BP_STATUS_OK = 0,
  BP_STATUS_NULL_POINTER = 1,
  BP_STATUS_INVALID_ARGUMENT = 2,
  // The input matrix is not doubly stochastic within tolerance.
  BP_STATUS_NOT_DOUBLY_STOCHASTIC = 3,
  // The power method missed its tolerance; the best value was still written.
  BP_STATUS_NO_CONVERGENCE = 4,
  // Dimension or exponent outside what the operation supports.
  BP_STATUS_UNSUPPORTED = 5,
  BP_STATUS_COMPUTATION_FAILED = 6,
  // A Rust panic was caught at the boundary.
  BP_STATUS_PANIC = 7,
} BpStatus;

// How a Chebyshev radius was obtained.
typedef enum BpRadiusKind {
  // Proven closed form or exhaustive computation.
  BP_RADIUS_KIND_EXACT = 0,
  // Conjectured, unproven closed form.
  BP_RADIUS_KIND_CONJECTURED = 1,
  // Power-method lower bound.
  BP_RADIUS_KIND_LOWER_BOUND = 2,
} BpRadiusKind;

// Opaque Birkhoff decomposition of an `n×n` matrix.
typedef struct BpDecomposition BpDecomposition;

// Opaque square matrix.
typedef struct BpMatrix BpMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a
// success. Valid until the next call into this library on the same thread.
const char *bp_last_error_message(void);

// Copies `n*n` row-major doubles into a new matrix handle.
//
// # Safety
// `data` must point to `n*n` readable doubles and `out` must be writable.
enum BpStatus bp_matrix_new(size_t n, const double *data, struct BpMatrix **out);

// Releases a matrix handle. NULL is ignored.
//
// # Safety
// `m` must come from [`bp_matrix_new`] and not be used afterwards.
void bp_matrix_free(struct BpMatrix *m);

// Dimension of a matrix, 0 for NULL.
//
// # Safety
// `m` must be NULL or a live handle.
size_t bp_matrix_dim(const struct BpMatrix *m);

// Operator p-norm. Exact for `p ∈ {1, 2, ∞}`; otherwise a power-method
// lower bound, in which case `*out_exact` is false. On `NoConvergence` the
// best value found is still written. `out_exact` may be NULL.
//
// # Safety
// `m` must be a live handle; `out_value` must be writable.
enum BpStatus bp_opnorm(const struct BpMatrix *m,
                        double p,
                        uint64_t seed,
                        double *out_value,
                        bool *out_exact);

// Minimal bounding-ball radius `max_P ‖D − P‖_p` of a doubly stochastic
// matrix. Closed form for `p ∈ {1, ∞}`; otherwise enumerates all `n!`
// permutations (`n ≤ 8`).
//
// # Safety
// `d` must be a live handle; `out_value` must be writable.
enum BpStatus bp_bounding_radius(const struct BpMatrix *d,
                                 double p,
                                 uint64_t seed,
                                 double *out_value);

// Chebyshev radius of the Birkhoff polytope `Ω_n` for `p`.
// `out_kind` may be NULL.
//
// # Safety
// `out_value` must be writable; `out_kind` must be NULL or writable.
enum BpStatus bp_chebyshev_radius(size_t n,
                                  double p,
                                  double *out_value,
                                  enum BpRadiusKind *out_kind);

// Birkhoff decomposition of a doubly stochastic matrix. Entries at or
// below `tol` count as zero.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum BpStatus bp_decompose(const struct BpMatrix *d, double tol, struct BpDecomposition **out);

// Number of terms, 0 for NULL.
//
// # Safety
// `dec` must be NULL or a live handle.
size_t bp_decomposition_len(const struct BpDecomposition *dec);

// Max entrywise error of the recombined sum, NaN for NULL.
//
// # Safety
// `dec` must be NULL or a live handle.
double bp_decomposition_residual(const struct BpDecomposition *dec);

// Term `k`: its weight, and the permutation as `sigma[i] = column of row i`
// written to `sigma_out`, which must hold `n` entries.
//
// # Safety
// `dec` must be a live handle, `out_alpha` writable and `sigma_out`
// writable for `n` elements.
enum BpStatus bp_decomposition_term(const struct BpDecomposition *dec,
                                    size_t k,
                                    double *out_alpha,
                                    size_t *sigma_out);

// Releases a decomposition handle. NULL is ignored.
//
// # Safety
// `dec` must come from [`bp_decompose`] and not be used afterwards.
void bp_decomposition_free(struct BpDecomposition *dec);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BPOLY_H */
