//! C ABI over `qcore`.
//!
//! Every function returns a status code: `QC_OK` (0) on success, a positive
//! code for a verification that ran but did not succeed, and a negative code
//! for errors. After an error, `qc_last_error` returns a message for the
//! calling thread. Series are opaque handles released with
//! `qc_series_free`; strings handed out are released with `qc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcore::congruence::{parse_claim, run_suite, verify_claims, SuiteOptions};
use qcore::eta::{eval_expr, parse_expr};
use qcore::identities::{find_identity, recurrence_table, verify_spec, RecurrenceRowJson};
use qcore::report::{Status, SuiteReport};
use qcore::series::{CoefficientRing, TruncatedSeries};

pub const QC_OK: i32 = 0;
/// A claim or identity failed.
pub const QC_COUNTEREXAMPLE: i32 = 1;
/// Nothing failed but something was skipped.
pub const QC_SKIPPED: i32 = 2;
pub const QC_ERR_NULL: i32 = -1;
pub const QC_ERR_UTF8: i32 = -2;
pub const QC_ERR_PARSE: i32 = -3;
pub const QC_ERR_EVAL: i32 = -4;
pub const QC_ERR_RANGE: i32 = -5;
pub const QC_ERR_UNKNOWN: i32 = -6;
pub const QC_ERR_PANIC: i32 = -7;

/// Opaque truncated power series.
pub struct QcSeries(TruncatedSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(i32, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<i32, Fail>) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(code)) => code,
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic".into());
            QC_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QC_ERR_NULL, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QC_ERR_UTF8, "argument is not valid UTF-8".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(QC_ERR_NULL, "null output pointer".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(QC_ERR_EVAL, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn series<'a>(s: *const QcSeries) -> Result<&'a TruncatedSeries, Fail> {
    s.as_ref()
        .map(|s| &s.0)
        .ok_or_else(|| Fail(QC_ERR_NULL, "null series handle".into()))
}

fn report_code(r: &SuiteReport) -> i32 {
    if r.counterexamples() > 0 || r.spot_check.as_ref().is_some_and(|s| !s.agrees) {
        QC_COUNTEREXAMPLE
    } else if r.results.iter().any(|x| x.status == Status::Skipped) {
        QC_SKIPPED
    } else {
        QC_OK
    }
}

fn order_arg(order: usize) -> Result<usize, Fail> {
    if order == 0 {
        Err(Fail(QC_ERR_RANGE, "order must be at least 1".into()))
    } else {
        Ok(order)
    }
}

/// Message for the last error on this thread, or NULL. The pointer stays
/// valid until the next `qc_` call on the same thread.
#[no_mangle]
pub extern "C" fn qc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Evaluates an eta-quotient expression to `order` coefficients. `modulus`
/// 0 means exact integers.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_series_eval(
    expr: *const c_char,
    modulus: u64,
    order: usize,
    out: *mut *mut QcSeries,
) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(Fail(QC_ERR_NULL, "null output pointer".into()));
        }
        let e = parse_expr(text(expr)?).map_err(|e| Fail(QC_ERR_PARSE, e.to_string()))?;
        let ring = if modulus == 0 {
            CoefficientRing::Exact
        } else {
            CoefficientRing::modulo(modulus).map_err(|e| Fail(QC_ERR_RANGE, e.to_string()))?
        };
        let s = eval_expr(&e, ring, order_arg(order)?).map_err(|e| Fail(QC_ERR_EVAL, e.to_string()))?;
        *out = Box::into_raw(Box::new(QcSeries(s)));
        Ok(QC_OK)
    })
}

/// Number of stored coefficients, or 0 for NULL.
///
/// # Safety
/// `s` must be NULL or a handle from `qc_series_eval`.
#[no_mangle]
pub unsafe extern "C" fn qc_series_order(s: *const QcSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// Coefficient of `q^n` as a decimal string (exact or the residue).
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_series_coeff_string(s: *const QcSeries, n: usize, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let s = series(s)?;
        if n >= s.order() {
            return Err(Fail(QC_ERR_RANGE, format!("index {n} beyond order {}", s.order())));
        }
        put_string(out, s.coeff(n).to_string())?;
        Ok(QC_OK)
    })
}

/// Coefficient of `q^n` as an `int64_t`; `QC_ERR_RANGE` if it does not fit.
///
/// # Safety
/// `s` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_series_coeff_i64(s: *const QcSeries, n: usize, out: *mut i64) -> i32 {
    guard(|| {
        let s = series(s)?;
        if out.is_null() {
            return Err(Fail(QC_ERR_NULL, "null output pointer".into()));
        }
        if n >= s.order() {
            return Err(Fail(QC_ERR_RANGE, format!("index {n} beyond order {}", s.order())));
        }
        *out = s
            .coeff_i64(n)
            .ok_or_else(|| Fail(QC_ERR_RANGE, format!("coefficient {n} does not fit in 64 bits")))?;
        Ok(QC_OK)
    })
}

/// Releases a series handle. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qc_series_free(s: *mut QcSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Verifies a claim such as `A(5,4; 25n+21) % 5^5 == 0` to `order` and
/// writes the JSON report to `out_json`.
///
/// # Safety
/// `claim` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_verify_claim(claim: *const c_char, order: usize, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let c = parse_claim(text(claim)?).map_err(|e| Fail(QC_ERR_PARSE, e.to_string()))?;
        let order = order_arg(order)?;
        let results = verify_claims(&[c], order, None).map_err(|e| Fail(QC_ERR_EVAL, e.to_string()))?;
        let r = SuiteReport {
            suite: None,
            order: order as u64,
            results,
            spot_check: None,
        };
        put_string(out_json, r.to_json())?;
        Ok(report_code(&r))
    })
}

/// Verifies a registered identity. `order` 0 uses its default order.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_verify_identity(id: *const c_char, order: usize, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let id = text(id)?;
        let spec = find_identity(id).map_err(|e| Fail(QC_ERR_UNKNOWN, e.to_string()))?;
        let order = if order == 0 { spec.default_order } else { order };
        let res = verify_spec(&spec, order).map_err(|e| Fail(QC_ERR_EVAL, e.to_string()))?;
        let r = SuiteReport {
            suite: None,
            order: order as u64,
            results: vec![res],
            spot_check: None,
        };
        put_string(out_json, r.to_json())?;
        Ok(report_code(&r))
    })
}

/// Runs a suite or family with default parameters.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_run_suite(suite: *const c_char, order: usize, seed: u64, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let suite = text(suite)?;
        let opts = SuiteOptions { seed, ..SuiteOptions::default() };
        let r = run_suite(suite, order_arg(order)?, &opts).map_err(|e| {
            let code = match e {
                qcore::congruence::CongruenceError::UnknownSuite(_)
                | qcore::congruence::CongruenceError::UnknownFamily(_) => QC_ERR_UNKNOWN,
                _ => QC_ERR_EVAL,
            };
            Fail(code, e.to_string())
        })?;
        put_string(out_json, r.to_json())?;
        Ok(report_code(&r))
    })
}

/// Recurrence table rows `0..=alpha_max` as a JSON array.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qc_recurrence_json(alpha_max: u32, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let rows = recurrence_table(alpha_max).map_err(|e| Fail(QC_ERR_RANGE, e.to_string()))?;
        let j: Vec<RecurrenceRowJson> = rows.iter().map(Into::into).collect();
        let s = serde_json::to_string(&j).map_err(|e| Fail(QC_ERR_EVAL, e.to_string()))?;
        put_string(out_json, s)?;
        Ok(QC_OK)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_error_codes() {
        assert_eq!(guard(|| panic!("boom")), QC_ERR_PANIC);
        assert!(!qc_last_error().is_null());
        assert_eq!(guard(|| Ok(QC_OK)), QC_OK);
        assert!(qc_last_error().is_null());
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(qc_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
