//! C ABI for `qschubert`.
//!
//! Rings are opaque handles created by [`qs_ring_new`] and released with
//! [`qs_ring_free`]. Every fallible function returns a status code and
//! writes its result through an out-pointer; strings handed out are
//! NUL-terminated UTF-8 JSON and must be released with [`qs_string_free`].
//! After a nonzero status, [`qs_last_error`] describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qschubert::cli::{execute, Command, Format, RunConfig};
use qschubert::potential::SupportSpec;
use qschubert::quotient::QuantumRing;
use qschubert::serial::poly_records;
use qschubert::{Error, Permutation};
use serde_json::json;

pub const QS_OK: i32 = 0;
/// A required pointer argument was null.
pub const QS_ERR_NULL: i32 = 1;
/// An argument was malformed or out of range.
pub const QS_ERR_INVALID: i32 = 2;
/// The computation failed.
pub const QS_ERR_COMPUTE: i32 = 3;
/// A Rust panic was caught at the boundary.
pub const QS_ERR_PANIC: i32 = 4;

/// Opaque handle to a quantum cohomology ring.
pub struct QsRing {
    ring: QuantumRing,
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

fn status_of(e: &Error) -> i32 {
    match e {
        Error::InvalidPermutation(_)
        | Error::SizeMismatch { .. }
        | Error::OutOfRange { .. }
        | Error::TruncationTooLow { .. }
        | Error::EmptySupport => QS_ERR_INVALID,
        _ => QS_ERR_COMPUTE,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (i32, String)>) -> i32 {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QS_OK,
        Ok(Err((code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("panic inside qschubert");
            QS_ERR_PANIC
        }
    }
}

fn lib_err(e: Error) -> (i32, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (i32, String) {
    (QS_ERR_NULL, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (i32, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QS_ERR_INVALID, format!("{what} is not UTF-8")))
}

unsafe fn read_perm(p: *const c_char, what: &str) -> Result<Permutation, (i32, String)> {
    read_str(p, what)?.parse().map_err(lib_err)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (i32, String)> {
    let c = CString::new(s).map_err(|_| (QS_ERR_COMPUTE, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn ring_ref<'a>(ring: *const QsRing) -> Result<&'a QuantumRing, (i32, String)> {
    ring.as_ref().map(|r| &r.ring).ok_or_else(|| null("ring"))
}

/// Builds the ring for `n` (1..=6) and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_ring_new(n: u32, out: *mut *mut QsRing) -> i32 {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ring = QuantumRing::new(n as usize).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QsRing { ring }));
        Ok(())
    })
}

/// Releases a handle from [`qs_ring_new`]; null is ignored.
///
/// # Safety
/// `ring` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_ring_free(ring: *mut QsRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Writes `n!`, the rank of the ring, to `*out`.
///
/// # Safety
/// `ring` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_ring_dim(ring: *const QsRing, out: *mut usize) -> i32 {
    guard(|| {
        let r = ring_ref(ring)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.dim();
        Ok(())
    })
}

/// JSON with the classical, quantum and double Schubert polynomials of the
/// permutation `w` (one-line notation such as `"3,2,1"`).
///
/// # Safety
/// `ring` must be a live handle, `w` a NUL-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_schubert_json(
    ring: *const QsRing,
    w: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let r = ring_ref(ring)?;
        let w = read_perm(w, "w")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = r.schubert_table();
        let poly = |p: &qschubert::algebra::Polynomial| json!({ "text": p.to_string(), "terms": poly_records(p) });
        let doc = json!({
            "w": w.to_string(),
            "classical": poly(t.classical(&w).map_err(lib_err)?),
            "quantum": poly(t.quantum(&w).map_err(lib_err)?),
            "double": poly(t.double(&w).map_err(lib_err)?),
        });
        write_string(out, doc.to_string())
    })
}

/// JSON object mapping each `w` with `c̃_{uv}^w ≠ 0` to that polynomial.
///
/// # Safety
/// As for [`qs_schubert_json`].
#[no_mangle]
pub unsafe extern "C" fn qs_structconst_json(
    ring: *const QsRing,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let r = ring_ref(ring)?;
        let u = read_perm(u, "u")?;
        let v = read_perm(v, "v")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cs = r.structure_constants(&u, &v).map_err(lib_err)?;
        let map: serde_json::Map<String, serde_json::Value> = cs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (r.perms()[w].to_string(), json!(c.to_string())))
            .collect();
        write_string(out, serde_json::Value::Object(map).to_string())
    })
}

/// The residue pairing `⟨S̃_u S̃_v⟩` as a polynomial string.
///
/// # Safety
/// As for [`qs_structconst_json`].
#[no_mangle]
pub unsafe extern "C" fn qs_pairing(
    ring: *const QsRing,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let r = ring_ref(ring)?;
        let u = read_perm(u, "u")?;
        let v = read_perm(v, "v")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (iu, iv) = (
            r.perm_index(&u).map_err(lib_err)?,
            r.perm_index(&v).map_err(lib_err)?,
        );
        let p = r.residue_elem(&r.mul(r.schubert_at(iu), r.schubert_at(iv)));
        write_string(out, p.to_string())
    })
}

/// Runs every check suite for `n` at truncation order `trunc` over the
/// support `support` (`"all"`, `"len<=K"` or a `;`-separated list; null
/// means all). Writes the JSON report to `*out` and whether every check
/// passed to `*passed`.
///
/// # Safety
/// `support` must be null or NUL-terminated; `out` and `passed` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qs_verify_all_json(
    n: u32,
    trunc: u32,
    support: *const c_char,
    out: *mut *mut c_char,
    passed: *mut bool,
) -> i32 {
    guard(|| {
        if out.is_null() || passed.is_null() {
            return Err(null("out"));
        }
        let spec: SupportSpec = if support.is_null() {
            SupportSpec::All
        } else {
            read_str(support, "support")?.parse().map_err(lib_err)?
        };
        if !(2..=4).contains(&n) {
            return Err((QS_ERR_INVALID, format!("n = {n} out of range (2..=4)")));
        }
        let config = RunConfig {
            n: n as usize,
            trunc,
            support: spec.to_string(),
            format: Format::Json,
            checks: Vec::new(),
            cache_dir: None,
            lax_n3: false,
        };
        let outcome = execute(&config, &Command::VerifyAll).map_err(lib_err)?;
        *passed = outcome.passed;
        write_string(out, outcome.body)
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn qs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
