use std::ffi::{CStr, CString};
use std::ptr;

use qschubert_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qs_string_free(s) };
    out
}

fn last_error() -> String {
    let p = qs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

struct Ring(*mut QsRing);

impl Ring {
    fn new(n: u32) -> Ring {
        let mut r = ptr::null_mut();
        assert_eq!(unsafe { qs_ring_new(n, &mut r) }, QS_OK);
        Ring(r)
    }
}

impl Drop for Ring {
    fn drop(&mut self) {
        unsafe { qs_ring_free(self.0) };
    }
}

#[test]
fn ring_lifecycle_and_dim() {
    let ring = Ring::new(3);
    let mut dim = 0usize;
    assert_eq!(unsafe { qs_ring_dim(ring.0, &mut dim) }, QS_OK);
    assert_eq!(dim, 6);
    unsafe { qs_ring_free(ptr::null_mut()) };
}

#[test]
fn structure_constants_of_s1_squared() {
    let ring = Ring::new(3);
    let u = CString::new("2,1,3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qs_structconst_json(ring.0, u.as_ptr(), u.as_ptr(), &mut out) },
        QS_OK
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v, serde_json::json!({"[3,1,2]": "1", "[1,2,3]": "q1"}));
}

#[test]
fn schubert_and_pairing() {
    let ring = Ring::new(3);
    let w = CString::new("3,2,1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qs_schubert_json(ring.0, w.as_ptr(), &mut out) },
        QS_OK
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["quantum"]["text"], "x1^2*x2 + x1*q1");
    assert_eq!(v["classical"]["text"], "x1^2*x2");

    let id = CString::new("1,2,3").unwrap();
    assert_eq!(
        unsafe { qs_pairing(ring.0, id.as_ptr(), w.as_ptr(), &mut out) },
        QS_OK
    );
    assert_eq!(take(out), "1");
}

#[test]
fn errors_set_status_and_message() {
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { qs_ring_new(0, &mut r) }, QS_ERR_INVALID);
    assert!(r.is_null());
    assert!(last_error().contains("n"));

    let ring = Ring::new(2);
    let bad = CString::new("1,1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { qs_schubert_json(ring.0, bad.as_ptr(), &mut out) },
        QS_ERR_INVALID
    );
    assert!(last_error().contains("invalid permutation"));

    let wrong_n = CString::new("1,2,3").unwrap();
    assert_eq!(
        unsafe { qs_schubert_json(ring.0, wrong_n.as_ptr(), &mut out) },
        QS_ERR_INVALID
    );

    assert_eq!(
        unsafe { qs_schubert_json(ring.0, ptr::null(), &mut out) },
        QS_ERR_NULL
    );
    assert_eq!(
        unsafe { qs_ring_dim(ptr::null(), ptr::null_mut()) },
        QS_ERR_NULL
    );

    let mut dim = 0usize;
    assert_eq!(unsafe { qs_ring_dim(ring.0, &mut dim) }, QS_OK);
    assert!(qs_last_error().is_null());
}

#[test]
fn verify_all_n2_passes() {
    let mut out = ptr::null_mut();
    let mut passed = false;
    assert_eq!(
        unsafe { qs_verify_all_json(2, 4, ptr::null(), &mut out, &mut passed) },
        QS_OK
    );
    assert!(passed);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["name"] == "lax.lax_equation"));

    assert_eq!(
        unsafe { qs_verify_all_json(5, 2, ptr::null(), &mut out, &mut passed) },
        QS_ERR_INVALID
    );
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qschubert.h"))
            .unwrap();
    for name in [
        "qs_ring_new",
        "qs_ring_free",
        "qs_ring_dim",
        "qs_schubert_json",
        "qs_structconst_json",
        "qs_pairing",
        "qs_verify_all_json",
        "qs_string_free",
        "qs_last_error",
        "typedef struct QsRing QsRing",
        "QS_ERR_PANIC",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
