//! C ABI over `bpoly`.
//!
//! Every fallible function returns a [`BpStatus`] and writes its results
//! through out-pointers. On failure a message is available from
//! [`bp_last_error_message`] on the same thread. Matrices and
//! decompositions are opaque handles released with their `_free` function.
//! Exponents are plain doubles; pass `INFINITY` for `p = ∞`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bpoly::birkhoff::{birkhoff_decompose, BirkhoffDecomposition, BirkhoffError};
use bpoly::chebgeo::{
    bounding_radius_enumerate, bounding_radius_l1, bounding_radius_linf, chebyshev_radius, ChebError, RadiusMethod,
};
use bpoly::matcore::{validate_doubly_stochastic, Exponent, Mat, MatError, DEFAULT_VALIDATION_TOL};
use bpoly::opnorm::{opnorm, EstimateConfig, OpNormError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The input matrix is not doubly stochastic within tolerance.
    NotDoublyStochastic = 3,
    /// The power method missed its tolerance; the best value was still written.
    NoConvergence = 4,
    /// Dimension or exponent outside what the operation supports.
    Unsupported = 5,
    ComputationFailed = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// How a Chebyshev radius was obtained.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BpRadiusKind {
    /// Proven closed form or exhaustive computation.
    Exact = 0,
    /// Conjectured, unproven closed form.
    Conjectured = 1,
    /// Power-method lower bound.
    LowerBound = 2,
}

/// Opaque square matrix.
pub struct BpMatrix(Mat);

/// Opaque Birkhoff decomposition of an `n×n` matrix.
pub struct BpDecomposition {
    n: usize,
    inner: BirkhoffDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(BpStatus, String);

impl From<MatError> for Fail {
    fn from(e: MatError) -> Self {
        let status = match e {
            MatError::NegativeEntry { .. } | MatError::RowSum { .. } | MatError::ColSum { .. } => {
                BpStatus::NotDoublyStochastic
            }
            MatError::DimensionTooLarge { .. } => BpStatus::Unsupported,
            _ => BpStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<OpNormError> for Fail {
    fn from(e: OpNormError) -> Self {
        let status = match e {
            OpNormError::NoConvergence { .. } => BpStatus::NoConvergence,
            OpNormError::UnsupportedExponent(_)
            | OpNormError::EstimatorExponent(_)
            | OpNormError::DimensionTooLarge(_) => BpStatus::Unsupported,
            OpNormError::BadConfig(_) => BpStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

impl From<ChebError> for Fail {
    fn from(e: ChebError) -> Self {
        match e {
            ChebError::Norm(inner) => inner.into(),
            ChebError::Mat(inner) => inner.into(),
            ChebError::BadExponent(_) | ChebError::DegenerateExponent | ChebError::NoBracket(_) => {
                Fail(BpStatus::Unsupported, e.to_string())
            }
            ChebError::Dimension { .. } => Fail(BpStatus::Unsupported, e.to_string()),
            _ => Fail(BpStatus::ComputationFailed, e.to_string()),
        }
    }
}

impl From<BirkhoffError> for Fail {
    fn from(e: BirkhoffError) -> Self {
        let status = match e {
            BirkhoffError::BadTolerance(_) => BpStatus::InvalidArgument,
            _ => BpStatus::ComputationFailed,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `body`, mapping errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> BpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            BpStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BpStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(BpStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

fn exponent(p: f64) -> Result<Exponent, Fail> {
    Ok(Exponent::new(p)?)
}

/// Message for the last failed call on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Copies `n*n` row-major doubles into a new matrix handle.
///
/// # Safety
/// `data` must point to `n*n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_matrix_new(n: usize, data: *const f64, out: *mut *mut BpMatrix) -> BpStatus {
    guard(|| {
        if data.is_null() || out.is_null() {
            return Err(null());
        }
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail(BpStatus::InvalidArgument, "n*n overflows".into()))?;
        let values = std::slice::from_raw_parts(data, len).to_vec();
        let m = Mat::new(n, values)?;
        *out = Box::into_raw(Box::new(BpMatrix(m)));
        Ok(())
    })
}

/// Releases a matrix handle. NULL is ignored.
///
/// # Safety
/// `m` must come from [`bp_matrix_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bp_matrix_free(m: *mut BpMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of a matrix, 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_matrix_dim(m: *const BpMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.n())
}

/// Operator p-norm. Exact for `p ∈ {1, 2, ∞}`; otherwise a power-method
/// lower bound, in which case `*out_exact` is false. On `NoConvergence` the
/// best value found is still written. `out_exact` may be NULL.
///
/// # Safety
/// `m` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_opnorm(
    m: *const BpMatrix,
    p: f64,
    seed: u64,
    out_value: *mut f64,
    out_exact: *mut bool,
) -> BpStatus {
    guard(|| {
        let m = deref(m)?;
        if out_value.is_null() {
            return Err(null());
        }
        let p = exponent(p)?;
        let cfg = EstimateConfig::for_dim(m.0.n()).with_seed(seed);
        let (est, err) = match opnorm(&m.0, p, &cfg) {
            Ok(est) => (est, None),
            Err(OpNormError::NoConvergence { best }) => {
                let msg = format!("power iteration did not converge (best value {})", best.value);
                (*best, Some(Fail(BpStatus::NoConvergence, msg)))
            }
            Err(e) => return Err(e.into()),
        };
        *out_value = est.value;
        if !out_exact.is_null() {
            *out_exact = est.method.is_exact();
        }
        err.map_or(Ok(()), Err)
    })
}

/// Minimal bounding-ball radius `max_P ‖D − P‖_p` of a doubly stochastic
/// matrix. Closed form for `p ∈ {1, ∞}`; otherwise enumerates all `n!`
/// permutations (`n ≤ 8`).
///
/// # Safety
/// `d` must be a live handle; `out_value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_bounding_radius(d: *const BpMatrix, p: f64, seed: u64, out_value: *mut f64) -> BpStatus {
    guard(|| {
        let d = deref(d)?;
        if out_value.is_null() {
            return Err(null());
        }
        let p = exponent(p)?;
        let ds = validate_doubly_stochastic(&d.0, DEFAULT_VALIDATION_TOL)?;
        let report = if p == Exponent::ONE {
            bounding_radius_l1(&ds)
        } else if p.is_inf() {
            bounding_radius_linf(&ds)
        } else {
            bounding_radius_enumerate(&ds, p, &EstimateConfig::for_dim(ds.n()).with_seed(seed))?
        };
        *out_value = report.value;
        Ok(())
    })
}

/// Chebyshev radius of the Birkhoff polytope `Ω_n` for `p`.
/// `out_kind` may be NULL.
///
/// # Safety
/// `out_value` must be writable; `out_kind` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bp_chebyshev_radius(
    n: usize,
    p: f64,
    out_value: *mut f64,
    out_kind: *mut BpRadiusKind,
) -> BpStatus {
    guard(|| {
        if out_value.is_null() {
            return Err(null());
        }
        let r = chebyshev_radius(n, exponent(p)?)?;
        *out_value = r.value;
        if !out_kind.is_null() {
            *out_kind = match r.method {
                RadiusMethod::Conjecture => BpRadiusKind::Conjectured,
                RadiusMethod::Estimate => BpRadiusKind::LowerBound,
                _ => BpRadiusKind::Exact,
            };
        }
        Ok(())
    })
}

/// Birkhoff decomposition of a doubly stochastic matrix. Entries at or
/// below `tol` count as zero.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bp_decompose(d: *const BpMatrix, tol: f64, out: *mut *mut BpDecomposition) -> BpStatus {
    guard(|| {
        let d = deref(d)?;
        if out.is_null() {
            return Err(null());
        }
        let ds = validate_doubly_stochastic(&d.0, DEFAULT_VALIDATION_TOL)?;
        let inner = birkhoff_decompose(&ds, tol)?;
        *out = Box::into_raw(Box::new(BpDecomposition { n: ds.n(), inner }));
        Ok(())
    })
}

/// Number of terms, 0 for NULL.
///
/// # Safety
/// `dec` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_decomposition_len(dec: *const BpDecomposition) -> usize {
    dec.as_ref().map_or(0, |d| d.inner.terms.len())
}

/// Max entrywise error of the recombined sum, NaN for NULL.
///
/// # Safety
/// `dec` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bp_decomposition_residual(dec: *const BpDecomposition) -> f64 {
    dec.as_ref().map_or(f64::NAN, |d| d.inner.residual)
}

/// Term `k`: its weight, and the permutation as `sigma[i] = column of row i`
/// written to `sigma_out`, which must hold `n` entries.
///
/// # Safety
/// `dec` must be a live handle, `out_alpha` writable and `sigma_out`
/// writable for `n` elements.
#[no_mangle]
pub unsafe extern "C" fn bp_decomposition_term(
    dec: *const BpDecomposition,
    k: usize,
    out_alpha: *mut f64,
    sigma_out: *mut usize,
) -> BpStatus {
    guard(|| {
        let dec = deref(dec)?;
        if out_alpha.is_null() || sigma_out.is_null() {
            return Err(null());
        }
        let term = dec.inner.terms.get(k).ok_or_else(|| {
            Fail(
                BpStatus::InvalidArgument,
                format!("term index {k} out of range ({} terms)", dec.inner.terms.len()),
            )
        })?;
        *out_alpha = term.alpha;
        std::slice::from_raw_parts_mut(sigma_out, dec.n).copy_from_slice(term.sigma.sigma());
        Ok(())
    })
}

/// Releases a decomposition handle. NULL is ignored.
///
/// # Safety
/// `dec` must come from [`bp_decompose`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bp_decomposition_free(dec: *mut BpDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}
