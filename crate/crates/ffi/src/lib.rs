//! C ABI for `strictstable`.
//!
//! Laws are opaque handles created by `ss_law_new` / `ss_frac_law_new` and
//! released with the matching `_free`. Every fallible function returns an
//! `SS_*` status code; on failure `ss_last_error` describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use strictstable::{
    EvalOptions, EvalResult, FracParams, Method, MethodChoice, StableError, StableParams, Warning,
};

pub const SS_OK: i32 = 0;
pub const SS_ERR_NULL_POINTER: i32 = 1;
pub const SS_ERR_OUT_OF_RANGE: i32 = 2;
pub const SS_ERR_DEGENERATE: i32 = 3;
pub const SS_ERR_DEGENERATE_INNER: i32 = 4;
pub const SS_ERR_DOMAIN: i32 = 5;
pub const SS_ERR_INVALID_OPTION: i32 = 6;
pub const SS_ERR_DIVERGENT_AT_ZERO: i32 = 7;
pub const SS_ERR_NON_FINITE: i32 = 8;
pub const SS_ERR_EMPTY_DATA: i32 = 9;
pub const SS_ERR_PANIC: i32 = 10;

pub const SS_METHOD_AUTO: i32 = 0;
pub const SS_METHOD_CLOSED_FORM: i32 = 1;
pub const SS_METHOD_SERIES: i32 = 2;
pub const SS_METHOD_INTEGRAL: i32 = 3;

pub const SS_WARN_NEAR_ALPHA_ONE: u32 = 1;
pub const SS_WARN_NOT_CONVERGED: u32 = 2;
pub const SS_WARN_CLAMPED: u32 = 4;
pub const SS_WARN_BELOW_INTEGRAL_RELIABILITY: u32 = 8;

/// A strictly stable law with its evaluation options.
pub struct SsLaw {
    params: StableParams,
    opts: EvalOptions,
}

/// A fractionally stable law.
pub struct SsFracLaw {
    params: FracParams,
}

/// One evaluated value.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SsResult {
    pub value: f64,
    pub error_estimate: f64,
    /// One of `SS_METHOD_CLOSED_FORM`, `SS_METHOD_SERIES`, `SS_METHOD_INTEGRAL`.
    pub method: i32,
    /// Bitwise or of `SS_WARN_*` flags.
    pub warnings: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &StableError) -> i32 {
    match err {
        StableError::OutOfRange { .. } => SS_ERR_OUT_OF_RANGE,
        StableError::Degenerate => SS_ERR_DEGENERATE,
        StableError::DegenerateInner => SS_ERR_DEGENERATE_INNER,
        StableError::AlphaOne | StableError::AtZero | StableError::Domain(_) => SS_ERR_DOMAIN,
        StableError::InvalidOption(_) => SS_ERR_INVALID_OPTION,
        StableError::DivergentAtZero => SS_ERR_DIVERGENT_AT_ZERO,
        StableError::EmptyData => SS_ERR_EMPTY_DATA,
        StableError::NonFinite(_) => SS_ERR_NON_FINITE,
    }
}

/// Runs `f`, translating library errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), StableError>>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SS_OK,
        Ok(Err(e)) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            SS_ERR_PANIC
        }
    }
}

fn null_pointer() -> i32 {
    set_last_error("null pointer argument");
    SS_ERR_NULL_POINTER
}

fn to_c(r: &EvalResult) -> SsResult {
    let method = match r.method {
        Method::ClosedForm => SS_METHOD_CLOSED_FORM,
        Method::Series => SS_METHOD_SERIES,
        Method::Integral => SS_METHOD_INTEGRAL,
    };
    let warnings = r.warnings.iter().fold(0, |acc, w| {
        acc | match w {
            Warning::NearAlphaOne => SS_WARN_NEAR_ALPHA_ONE,
            Warning::NotConverged => SS_WARN_NOT_CONVERGED,
            Warning::Clamped => SS_WARN_CLAMPED,
            Warning::BelowIntegralReliability => SS_WARN_BELOW_INTEGRAL_RELIABILITY,
        }
    });
    SsResult {
        value: r.value,
        error_estimate: r.error_estimate,
        method,
        warnings,
    }
}

/// Message of the last failure on the calling thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a law with index `alpha`, asymmetry `theta` and scale `lambda`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_law_new(alpha: f64, theta: f64, lambda: f64, out: *mut *mut SsLaw) -> i32 {
    if out.is_null() {
        return null_pointer();
    }
    *out = ptr::null_mut();
    guard(|| {
        let params = StableParams::new(alpha, theta, lambda)?;
        let law = SsLaw {
            params,
            opts: EvalOptions::default(),
        };
        *out = Box::into_raw(Box::new(law));
        Ok(())
    })
}

/// Releases a law; null is ignored.
///
/// # Safety
/// `law` must be null or come from `ss_law_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ss_law_free(law: *mut SsLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}

/// Sets the target absolute accuracy; `epsilon <= 0` restores the default.
///
/// # Safety
/// `law` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_law_set_epsilon(law: *mut SsLaw, epsilon: f64) -> i32 {
    let Some(law) = law.as_mut() else {
        return null_pointer();
    };
    guard(|| {
        if epsilon.is_nan() {
            return Err(StableError::NonFinite(epsilon));
        }
        law.opts.epsilon = (epsilon > 0.0).then_some(epsilon);
        Ok(())
    })
}

/// Forces an evaluation route, one of the `SS_METHOD_*` constants.
///
/// # Safety
/// `law` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_law_set_method(law: *mut SsLaw, method: i32) -> i32 {
    let Some(law) = law.as_mut() else {
        return null_pointer();
    };
    guard(|| {
        law.opts.method = match method {
            SS_METHOD_AUTO => MethodChoice::Auto,
            SS_METHOD_CLOSED_FORM => MethodChoice::ClosedForm,
            SS_METHOD_SERIES => MethodChoice::Series,
            SS_METHOD_INTEGRAL => MethodChoice::Integral,
            m => return Err(StableError::InvalidOption(format!("unknown method code {m}"))),
        };
        Ok(())
    })
}

unsafe fn evaluate(
    law: *const SsLaw,
    x: f64,
    out: *mut SsResult,
    f: fn(f64, &StableParams, &EvalOptions) -> Result<EvalResult, StableError>,
) -> i32 {
    let (Some(law), false) = (law.as_ref(), out.is_null()) else {
        return null_pointer();
    };
    guard(|| {
        *out = to_c(&f(x, &law.params, &law.opts)?);
        Ok(())
    })
}

/// Density at `x`.
///
/// # Safety
/// `law` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_pdf(law: *const SsLaw, x: f64, out: *mut SsResult) -> i32 {
    evaluate(law, x, out, strictstable::pdf)
}

/// Distribution function at `x`.
///
/// # Safety
/// `law` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_cdf(law: *const SsLaw, x: f64, out: *mut SsResult) -> i32 {
    evaluate(law, x, out, strictstable::cdf)
}

/// Densities at `n` points; stops at the first failure.
///
/// # Safety
/// `xs` must hold `n` readable values and `values` `n` writable ones.
#[no_mangle]
pub unsafe extern "C" fn ss_pdf_array(law: *const SsLaw, xs: *const f64, n: usize, values: *mut f64) -> i32 {
    let Some(law) = law.as_ref() else {
        return null_pointer();
    };
    if n > 0 && (xs.is_null() || values.is_null()) {
        return null_pointer();
    }
    if n == 0 {
        return SS_OK;
    }
    let xs = std::slice::from_raw_parts(xs, n);
    let values = std::slice::from_raw_parts_mut(values, n);
    guard(|| {
        for (v, &x) in values.iter_mut().zip(xs) {
            *v = strictstable::pdf(x, &law.params, &law.opts)?.value;
        }
        Ok(())
    })
}

/// Creates a fractionally stable law.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_frac_law_new(
    alpha: f64,
    beta: f64,
    theta: f64,
    lambda: f64,
    out: *mut *mut SsFracLaw,
) -> i32 {
    if out.is_null() {
        return null_pointer();
    }
    *out = ptr::null_mut();
    guard(|| {
        let params = FracParams::new(alpha, beta, theta, lambda)?;
        *out = Box::into_raw(Box::new(SsFracLaw { params }));
        Ok(())
    })
}

/// Releases a fractionally stable law; null is ignored.
///
/// # Safety
/// `law` must be null or come from `ss_frac_law_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ss_frac_law_free(law: *mut SsFracLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}

/// Fractionally stable density at `x` with absolute tolerance `tol`.
///
/// # Safety
/// `law` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_frac_pdf(law: *const SsFracLaw, x: f64, tol: f64, out: *mut SsResult) -> i32 {
    let (Some(law), false) = (law.as_ref(), out.is_null()) else {
        return null_pointer();
    };
    guard(|| {
        *out = to_c(&strictstable::frac_pdf(x, &law.params, tol)?);
        Ok(())
    })
}

/// Log-likelihood of `n` observations.
///
/// # Safety
/// `data` must hold `n` readable values and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_frac_log_likelihood(
    law: *const SsFracLaw,
    data: *const f64,
    n: usize,
    tol: f64,
    out: *mut f64,
) -> i32 {
    let Some(law) = law.as_ref() else {
        return null_pointer();
    };
    if out.is_null() || (n > 0 && data.is_null()) {
        return null_pointer();
    }
    let data: &[f64] = if n == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(data, n)
    };
    guard(|| {
        *out = strictstable::log_likelihood(data, &law.params, tol)?;
        Ok(())
    })
}

/// Series threshold: the largest `|x|` at which `n` terms of the density
/// expansion meet `epsilon`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_threshold_pdf(alpha: f64, epsilon: f64, n: usize, out: *mut f64) -> i32 {
    threshold(alpha, epsilon, n, out, strictstable::threshold_x_pdf)
}

/// Series threshold of the distribution-function expansion.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ss_threshold_cdf(alpha: f64, epsilon: f64, n: usize, out: *mut f64) -> i32 {
    threshold(alpha, epsilon, n, out, strictstable::threshold_x_cdf)
}

unsafe fn threshold(alpha: f64, epsilon: f64, n: usize, out: *mut f64, f: fn(f64, f64, usize) -> f64) -> i32 {
    if out.is_null() {
        return null_pointer();
    }
    guard(|| {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(StableError::OutOfRange {
                param: strictstable::Param::Alpha,
                message: format!("alpha = {alpha} not in (0, 2]"),
            });
        }
        if !(epsilon > 0.0 && epsilon.is_finite()) || n == 0 {
            return Err(StableError::InvalidOption(format!(
                "need epsilon > 0 and N >= 1, got {epsilon}, {n}"
            )));
        }
        *out = f(alpha, epsilon, n);
        Ok(())
    })
}
