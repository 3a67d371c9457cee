//! C ABI over the `heavenly` toolkit.
//!
//! Every function returns an [`HvStatus`]; results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function, and strings returned by the library are released with
//! [`hv_string_free`]. After a non-`Ok` status, [`hv_last_error`] describes
//! the failure for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use heavenly::arith::rat_to_string;
use heavenly::classifier::{ClassifyOptions, Status};
use heavenly::document::{classify_document, OutputDocument};
use heavenly::factor::factor_over_q;
use heavenly::numberfield::{extend, ramification_report, splitting_tower, BaseField, FieldTower, KPoly};
use heavenly::poly::{squarefree_part, UniPoly};
use heavenly::verifier::{run_selected, LEMMA_IDS};
use heavenly::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HvStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    ResourceCap = 3,
    NullArgument = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HvVerdictStatus {
    Heavenly = 0,
    NotHeavenly = 1,
    Unknown = 2,
}

/// A polynomial over ℚ.
pub struct HvPolynomial(UniPoly);

/// Irreducible factors of a polynomial over ℚ with multiplicities.
pub struct HvFactorization {
    constant: String,
    factors: Vec<(UniPoly, u32)>,
}

/// A classification result together with its input document.
pub struct HvVerdict(OutputDocument);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HvStatus {
    match e {
        Error::ResourceCap { .. } => HvStatus::ResourceCap,
        Error::Internal(_) => HvStatus::VerificationFailed,
        _ => HvStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HvStatus, String)>) -> HvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HvStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HvStatus::Panic
        }
    }
}

fn lib(e: Error) -> (HvStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (HvStatus, String) {
    (HvStatus::NullArgument, format!("`{name}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (HvStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (HvStatus::InvalidInput, format!("`{name}` is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, (HvStatus, String)> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn write_out<T>(out: *mut T, v: T, name: &str) -> Result<(), (HvStatus, String)> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the last failed call on this thread; empty after success.
/// Owned by the library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn hv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text such as `"x^4 - 2*x + 1/3"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_polynomial_parse(text: *const c_char, out: *mut *mut HvPolynomial) -> HvStatus {
    guard(|| {
        let t = str_arg(text, "text")?;
        let f: UniPoly = t.parse().map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(HvPolynomial(f))), "out")
    })
}

/// # Safety
/// `p` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hv_polynomial_free(p: *mut HvPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree of `p`; the zero polynomial reports 0.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_polynomial_degree(p: *const HvPolynomial, out: *mut usize) -> HvStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        write_out(out, p.0.deg(), "out")
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable. Free the result
/// with [`hv_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hv_polynomial_to_string(p: *const HvPolynomial, out: *mut *mut c_char) -> HvStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        write_out(out, c_string(p.0.to_string()), "out")
    })
}

/// Factors over ℚ.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_polynomial_factor(p: *const HvPolynomial, out: *mut *mut HvFactorization) -> HvStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        let fac = factor_over_q(&p.0).map_err(lib)?;
        let h = HvFactorization {
            constant: rat_to_string(&fac.constant),
            factors: fac.factors,
        };
        write_out(out, Box::into_raw(Box::new(h)), "out")
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_factorization_count(f: *const HvFactorization, out: *mut usize) -> HvStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        write_out(out, f.factors.len(), "out")
    })
}

/// The leading constant as a decimal string `"a"` or `"a/b"`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_factorization_constant(f: *const HvFactorization, out: *mut *mut c_char) -> HvStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        write_out(out, c_string(f.constant.clone()), "out")
    })
}

/// Factor `index` as a new polynomial handle, with its multiplicity.
///
/// # Safety
/// `f` must be a live handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_factorization_factor(
    f: *const HvFactorization,
    index: usize,
    out_factor: *mut *mut HvPolynomial,
    out_multiplicity: *mut u32,
) -> HvStatus {
    guard(|| {
        let f = ref_arg(f, "f")?;
        let (g, e) = f
            .factors
            .get(index)
            .ok_or_else(|| (HvStatus::InvalidInput, format!("factor index {index} out of range")))?;
        if out_factor.is_null() {
            return Err(null("out_factor"));
        }
        write_out(out_multiplicity, *e, "out_multiplicity")?;
        write_out(out_factor, Box::into_raw(Box::new(HvPolynomial(g.clone()))), "out_factor")
    })
}

/// # Safety
/// `f` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hv_factorization_free(f: *mut HvFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Degree over `base` (`"Q"`, `"Q(i)"`, `"Q(sqrt2)"`, `"Q(sqrt-2)"`; null
/// means ℚ) of the splitting field of `p`.
///
/// # Safety
/// `p` must be a live handle, `base` null or a NUL-terminated string, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hv_splitting_degree(
    p: *const HvPolynomial,
    base: *const c_char,
    degree_cap: usize,
    out: *mut usize,
) -> HvStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        let tag = if base.is_null() { "Q" } else { str_arg(base, "base")? };
        let k = FieldTower::base(BaseField::parse(tag).map_err(lib)?);
        let f = squarefree_part(&p.0).map_err(lib)?;
        let s = splitting_tower(&KPoly::from_rational(&f), &k, degree_cap).map_err(lib)?;
        write_out(out, s.relative_degree(), "out")
    })
}

/// Odd primes ramified in `ℚ[x]/(p)` for irreducible `p`, as a
/// comma-separated decimal list (empty when none).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_odd_ramified_primes(p: *const HvPolynomial, out: *mut *mut c_char) -> HvStatus {
    guard(|| {
        let p = ref_arg(p, "p")?;
        let k = extend(&FieldTower::rational(), &KPoly::from_rational(&p.0)).map_err(lib)?;
        let rep = ramification_report(&k).map_err(lib)?;
        let ps: Vec<String> = rep.ramified_primes().iter().map(ToString::to_string).collect();
        write_out(out, c_string(ps.join(",")), "out")
    })
}

/// Classifies a JSON input document. A resource cap still yields a verdict
/// (status unknown) and returns [`HvStatus::ResourceCap`].
///
/// # Safety
/// `document` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_classify_json(
    document: *const c_char,
    degree_cap: usize,
    out: *mut *mut HvVerdict,
) -> HvStatus {
    let mut capped = false;
    let s = guard(|| {
        let text = str_arg(document, "document")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = classify_document(text, &ClassifyOptions { degree_cap }).map_err(lib)?;
        capped = doc.verdict.resource_cap.is_some();
        write_out(out, Box::into_raw(Box::new(HvVerdict(doc))), "out")
    });
    if s == HvStatus::Ok && capped {
        set_error("resource cap reached; verdict is unknown");
        return HvStatus::ResourceCap;
    }
    s
}

/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_status(v: *const HvVerdict, out: *mut HvVerdictStatus) -> HvStatus {
    guard(|| {
        let v = ref_arg(v, "v")?;
        let s = match v.0.verdict.status {
            Status::Heavenly => HvVerdictStatus::Heavenly,
            Status::NotHeavenly => HvVerdictStatus::NotHeavenly,
            Status::Unknown => HvVerdictStatus::Unknown,
        };
        write_out(out, s, "out")
    })
}

/// Closure degree over ℚ, or 0 when it was not computed.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_closure_degree(v: *const HvVerdict, out: *mut u64) -> HvStatus {
    guard(|| {
        let v = ref_arg(v, "v")?;
        write_out(out, v.0.verdict.closure_degree.unwrap_or(0), "out")
    })
}

/// Degree of the 2-torsion field over the base, or 0 when not computed.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_torsion_degree(v: *const HvVerdict, out: *mut u64) -> HvStatus {
    guard(|| {
        let v = ref_arg(v, "v")?;
        write_out(out, v.0.verdict.torsion_field_degree.unwrap_or(0), "out")
    })
}

/// The full output document as JSON.
///
/// # Safety
/// `v` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_json(v: *const HvVerdict, out: *mut *mut c_char) -> HvStatus {
    guard(|| {
        let v = ref_arg(v, "v")?;
        write_out(out, c_string(v.0.to_json()), "out")
    })
}

/// Replays the verdict's certificate; `out_consistent` receives the result.
///
/// # Safety
/// `v` must be a live handle; `out_consistent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_replay(v: *const HvVerdict, out_consistent: *mut bool) -> HvStatus {
    guard(|| {
        let v = ref_arg(v, "v")?;
        let r = v.0.replay().map_err(lib)?;
        write_out(out_consistent, r.consistent, "out_consistent")
    })
}

/// # Safety
/// `v` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hv_verdict_free(v: *mut HvVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Runs one lemma by id, or the whole suite when `lemma` is null.
/// Returns [`HvStatus::VerificationFailed`] when any report fails.
///
/// # Safety
/// `lemma` must be null or a NUL-terminated string; `out_passed` must be
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn hv_verify(lemma: *const c_char, out_passed: *mut bool) -> HvStatus {
    let mut all = false;
    let s = guard(|| {
        let ids: Vec<&str> = if lemma.is_null() {
            LEMMA_IDS.to_vec()
        } else {
            vec![str_arg(lemma, "lemma")?]
        };
        let reports = run_selected(&ids).map_err(lib)?;
        all = reports.iter().all(|r| r.passed);
        if !out_passed.is_null() {
            out_passed.write(all);
        }
        Ok(())
    });
    if s == HvStatus::Ok && !all {
        set_error("at least one lemma failed");
        return HvStatus::VerificationFailed;
    }
    s
}
