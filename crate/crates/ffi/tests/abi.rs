use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qcore_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qc_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = qc_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn eval(expr: &str, modulus: u64, order: usize) -> (i32, *mut QcSeries) {
    let e = CString::new(expr).unwrap();
    let mut s = ptr::null_mut();
    let rc = unsafe { qc_series_eval(e.as_ptr(), modulus, order, &mut s) };
    (rc, s)
}

#[test]
fn series_handles() {
    let (rc, s) = eval("1/f1", 0, 101);
    assert_eq!(rc, QC_OK);
    unsafe {
        assert_eq!(qc_series_order(s), 101);
        let mut v = 0i64;
        assert_eq!(qc_series_coeff_i64(s, 100, &mut v), QC_OK);
        assert_eq!(v, 190569292);
        let mut text = ptr::null_mut();
        assert_eq!(qc_series_coeff_string(s, 5, &mut text), QC_OK);
        assert_eq!(take(text), "7");
        assert_eq!(qc_series_coeff_i64(s, 101, &mut v), QC_ERR_RANGE);
        assert!(last_error().unwrap().contains("beyond order"));
        qc_series_free(s);
        assert_eq!(qc_series_order(ptr::null()), 0);
        qc_series_free(ptr::null_mut());
    }
}

#[test]
fn big_and_modular_coefficients() {
    let (_, s) = eval("f1^-24", 0, 61);
    unsafe {
        let mut v = 0i64;
        assert_eq!(qc_series_coeff_i64(s, 60, &mut v), QC_ERR_RANGE);
        let mut text = ptr::null_mut();
        assert_eq!(qc_series_coeff_string(s, 60, &mut text), QC_OK);
        assert!(take(text).len() > 20);
        qc_series_free(s);
    }
    let (rc, s) = eval("1/f1", 7, 10);
    assert_eq!(rc, QC_OK);
    let mut v = 0i64;
    assert_eq!(unsafe { qc_series_coeff_i64(s, 5, &mut v) }, QC_OK);
    assert_eq!(v, 0);
    unsafe { qc_series_free(s) };
}

#[test]
fn error_codes() {
    assert_eq!(eval("f1^", 0, 5).0, QC_ERR_PARSE);
    assert!(last_error().is_some());
    assert_eq!(eval("f1", 0, 0).0, QC_ERR_RANGE);
    assert_eq!(eval("1/(2*f1)", 0, 5).0, QC_ERR_EVAL);
    assert_eq!(eval("f1", 1, 5).0, QC_ERR_RANGE);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { qc_series_eval(ptr::null(), 0, 5, &mut s) }, QC_ERR_NULL);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { qc_series_eval(bad.as_ptr().cast(), 0, 5, &mut s) }, QC_ERR_UTF8);
    let ok = CString::new("f1").unwrap();
    assert_eq!(unsafe { qc_series_eval(ok.as_ptr(), 0, 5, ptr::null_mut()) }, QC_ERR_NULL);
    // success clears the previous message
    let (rc, s) = eval("f1", 0, 5);
    assert_eq!(rc, QC_OK);
    assert!(last_error().is_none());
    unsafe { qc_series_free(s) };
}

#[test]
fn verification_json() {
    let mut out = ptr::null_mut();
    let c = CString::new("A(5,2; 5n+1) % 5 == 0").unwrap();
    assert_eq!(unsafe { qc_verify_claim(c.as_ptr(), 100, &mut out) }, QC_COUNTEREXAMPLE);
    let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(r["results"][0]["failure"]["value"], "2");

    let c = CString::new("A(5,4; 125n+121) % 5^6 == 0").unwrap();
    assert_eq!(unsafe { qc_verify_claim(c.as_ptr(), 100, &mut out) }, QC_SKIPPED);
    take(out);

    let id = CString::new("rr-relation").unwrap();
    assert_eq!(unsafe { qc_verify_identity(id.as_ptr(), 0, &mut out) }, QC_OK);
    let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(r["order"], 300);
    let id = CString::new("nope").unwrap();
    assert_eq!(unsafe { qc_verify_identity(id.as_ptr(), 0, &mut out) }, QC_ERR_UNKNOWN);

    let suite = CString::new("thm-1.5").unwrap();
    assert_eq!(unsafe { qc_run_suite(suite.as_ptr(), 800, 3, &mut out) }, QC_OK);
    let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(r["results"].as_array().unwrap().len(), 6);
    let suite = CString::new("nope").unwrap();
    assert_eq!(unsafe { qc_run_suite(suite.as_ptr(), 800, 3, &mut out) }, QC_ERR_UNKNOWN);

    assert_eq!(unsafe { qc_recurrence_json(2, &mut out) }, QC_OK);
    let r: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(r[2]["d"], "476837158203125");
    assert_eq!(unsafe { qc_recurrence_json(65, &mut out) }, QC_ERR_RANGE);
}

#[test]
fn header_matches_exports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/qcore.h")).unwrap();
    for f in [
        "qc_series_eval", "qc_series_order", "qc_series_coeff_string", "qc_series_coeff_i64", "qc_series_free",
        "qc_string_free", "qc_verify_claim", "qc_verify_identity", "qc_run_suite", "qc_recurrence_json",
        "qc_last_error", "qc_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct QcSeries QcSeries;"));
}

// Builds tests/smoke.c against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = target.join("libqcore_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = target.join("qcore_ffi_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("run C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok 0.1.0"));
}
