use std::ffi::{CStr, CString};
use std::ptr;

use heavenly_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    hv_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(hv_last_error()).to_str().unwrap().to_string()
}

#[test]
fn polynomial_roundtrip_and_factor() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(hv_polynomial_parse(cstr("x^4 - 1").as_ptr(), &mut p), HvStatus::Ok);
        let mut d = 0usize;
        assert_eq!(hv_polynomial_degree(p, &mut d), HvStatus::Ok);
        assert_eq!(d, 4);
        let mut s = ptr::null_mut();
        assert_eq!(hv_polynomial_to_string(p, &mut s), HvStatus::Ok);
        assert_eq!(take(s), "x^4 - 1");

        let mut f = ptr::null_mut();
        assert_eq!(hv_polynomial_factor(p, &mut f), HvStatus::Ok);
        let mut n = 0usize;
        hv_factorization_count(f, &mut n);
        assert_eq!(n, 3);
        let mut texts = Vec::new();
        for i in 0..n {
            let mut g = ptr::null_mut();
            let mut e = 0u32;
            assert_eq!(hv_factorization_factor(f, i, &mut g, &mut e), HvStatus::Ok);
            assert_eq!(e, 1);
            let mut s = ptr::null_mut();
            hv_polynomial_to_string(g, &mut s);
            texts.push(take(s));
            hv_polynomial_free(g);
        }
        assert_eq!(texts, ["x - 1", "x + 1", "x^2 + 1"]);
        let mut g = ptr::null_mut();
        let mut e = 0u32;
        assert_eq!(hv_factorization_factor(f, 3, &mut g, &mut e), HvStatus::InvalidInput);
        hv_factorization_free(f);
        hv_polynomial_free(p);
    }
}

#[test]
fn field_queries() {
    unsafe {
        let mut p = ptr::null_mut();
        hv_polynomial_parse(cstr("x^4 - 2").as_ptr(), &mut p);
        let mut d = 0usize;
        assert_eq!(hv_splitting_degree(p, ptr::null(), 512, &mut d), HvStatus::Ok);
        assert_eq!(d, 8);
        assert_eq!(hv_splitting_degree(p, cstr("Q(i)").as_ptr(), 512, &mut d), HvStatus::Ok);
        assert_eq!(d, 4);
        assert_eq!(hv_splitting_degree(p, ptr::null(), 4, &mut d), HvStatus::ResourceCap);
        assert_eq!(hv_splitting_degree(p, cstr("Q(sqrt3)").as_ptr(), 512, &mut d), HvStatus::InvalidInput);
        assert!(last_error().contains("sqrt3"));
        hv_polynomial_free(p);

        let mut p = ptr::null_mut();
        hv_polynomial_parse(cstr("x^2 - 45").as_ptr(), &mut p);
        let mut s = ptr::null_mut();
        assert_eq!(hv_odd_ramified_primes(p, &mut s), HvStatus::Ok);
        assert_eq!(take(s), "5");
        hv_polynomial_free(p);
    }
}

#[test]
fn classify_and_replay() {
    unsafe {
        let doc = cstr(r#"{"kind":"jacobian","base_field":"Q","f":[0,1,0,0,0,1]}"#);
        let mut v = ptr::null_mut();
        assert_eq!(hv_classify_json(doc.as_ptr(), 512, &mut v), HvStatus::Ok);
        let mut st = HvVerdictStatus::Unknown;
        hv_verdict_status(v, &mut st);
        assert_eq!(st, HvVerdictStatus::Heavenly);
        let mut c = 0u64;
        hv_verdict_closure_degree(v, &mut c);
        assert_eq!(c, 4);
        let mut js = ptr::null_mut();
        hv_verdict_json(v, &mut js);
        assert!(take(js).contains("\"status\": \"heavenly\""));
        let mut ok = false;
        assert_eq!(hv_verdict_replay(v, &mut ok), HvStatus::Ok);
        assert!(ok);
        hv_verdict_free(v);

        let capped = cstr(r#"{"kind":"jacobian","base_field":"Q","f":[-1,-1,0,0,0,1]}"#);
        let mut v = ptr::null_mut();
        assert_eq!(hv_classify_json(capped.as_ptr(), 10, &mut v), HvStatus::ResourceCap);
        hv_verdict_status(v, &mut st);
        assert_eq!(st, HvVerdictStatus::Unknown);
        hv_verdict_free(v);

        let mut v = ptr::null_mut();
        assert_eq!(hv_classify_json(cstr("{").as_ptr(), 512, &mut v), HvStatus::InvalidInput);
        assert!(v.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_arguments_and_verify() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(hv_polynomial_parse(ptr::null(), &mut p), HvStatus::NullArgument);
        assert_eq!(hv_polynomial_parse(cstr("x").as_ptr(), ptr::null_mut()), HvStatus::NullArgument);
        let mut d = 0usize;
        assert_eq!(hv_polynomial_degree(ptr::null(), &mut d), HvStatus::NullArgument);
        assert_eq!(hv_polynomial_parse(cstr("x^1.5").as_ptr(), &mut p), HvStatus::InvalidInput);
        hv_polynomial_free(ptr::null_mut());
        hv_string_free(ptr::null_mut());

        let mut passed = false;
        assert_eq!(hv_verify(cstr("orbit_bounds").as_ptr(), &mut passed), HvStatus::Ok);
        assert!(passed);
        assert_eq!(hv_verify(cstr("nope").as_ptr(), &mut passed), HvStatus::InvalidInput);
    }
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/heavenly.h")).unwrap();
    for sym in [
        "hv_polynomial_parse",
        "hv_polynomial_factor",
        "hv_factorization_factor",
        "hv_splitting_degree",
        "hv_odd_ramified_primes",
        "hv_classify_json",
        "hv_verdict_status",
        "hv_verdict_replay",
        "hv_verify",
        "hv_last_error",
        "hv_string_free",
        "HV_STATUS_RESOURCE_CAP = 3",
        "typedef struct HvVerdict HvVerdict",
    ] {
        assert!(h.contains(sym), "{sym} missing from header");
    }
}
