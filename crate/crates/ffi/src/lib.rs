//! C ABI over `toric-pick`.
//!
//! Polytopes are opaque handles created from the JSON file format and released
//! with `tp_polytope_free`. Every call returns a `TpStatus`; on failure the
//! message is available from `tp_last_error` on the same thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with `tp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use toric_pick::agw::verify_agw;
use toric_pick::cli::PolytopeFile;
use toric_pick::invariants::{
    check_face_todd, check_pick, check_tetrahedron, check_twisted_todd, check_u_independence,
    check_untwisted_signature, DelzantPolytope, Report,
};
use toric_pick::localization::Partition;
use toric_pick::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TpStatus {
    Ok = 0,
    IdentityFails = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Utf8 = 4,
    Internal = 5,
}

pub const TP_IDENTITY_PICK: u32 = 0;
pub const TP_IDENTITY_TODD: u32 = 1;
pub const TP_IDENTITY_FACE_TODD: u32 = 2;
pub const TP_IDENTITY_TETRAHEDRON: u32 = 3;
pub const TP_IDENTITY_SIGNATURE: u32 = 4;
pub const TP_IDENTITY_U_INDEPENDENCE: u32 = 5;

/// Opaque handle to a validated Delzant polytope.
pub struct TpPolytope {
    inner: DelzantPolytope,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn from_error(e: Error) -> TpStatus {
    let status = if matches!(e, Error::Inconsistent(_)) { TpStatus::IdentityFails } else { TpStatus::InvalidInput };
    set_error(e.to_string());
    status
}

/// Runs `f`, converting panics to `Internal`.
fn guard(f: impl FnOnce() -> TpStatus) -> TpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            TpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, TpStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(TpStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|e| {
        set_error(format!("argument is not UTF-8: {e}"));
        TpStatus::Utf8
    })
}

unsafe fn handle<'a>(p: *const TpPolytope) -> Result<&'a TpPolytope, TpStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null polytope handle");
        TpStatus::NullPointer
    })
}

fn check_out<T>(out: *mut T) -> Result<(), TpStatus> {
    if out.is_null() {
        set_error("null output pointer");
        Err(TpStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn write_report(report: &Report, out: *mut *mut c_char) -> TpStatus {
    let json = match serde_json::to_string(report) {
        Ok(s) => s,
        Err(e) => {
            set_error(e.to_string());
            return TpStatus::Internal;
        }
    };
    *out = CString::new(json).expect("JSON has no interior NUL").into_raw();
    if report.holds {
        TpStatus::Ok
    } else {
        TpStatus::IdentityFails
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Parses a polytope file (JSON text) and checks that it is Delzant.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_polytope_from_json(json: *const c_char, out: *mut *mut TpPolytope) -> TpStatus {
    guard(|| {
        tri!(check_out(out));
        *out = ptr::null_mut();
        let text = tri!(read_str(json));
        let file = match PolytopeFile::parse(text) {
            Ok(f) => f,
            Err(f) => {
                set_error(f.message);
                return TpStatus::InvalidInput;
            }
        };
        let dp = match file.to_polytope().and_then(DelzantPolytope::new) {
            Ok(dp) => dp,
            Err(e) => return from_error(e),
        };
        *out = Box::into_raw(Box::new(TpPolytope { inner: dp }));
        TpStatus::Ok
    })
}

/// # Safety
/// `p` must come from `tp_polytope_from_json` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tp_polytope_free(p: *mut TpPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_polytope_dim(p: *const TpPolytope, out: *mut usize) -> TpStatus {
    guard(|| {
        let p = tri!(handle(p));
        tri!(check_out(out));
        *out = p.inner.dim();
        TpStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_polytope_num_facets(p: *const TpPolytope, out: *mut usize) -> TpStatus {
    guard(|| {
        let p = tri!(handle(p));
        tri!(check_out(out));
        *out = p.inner.num_facets();
        TpStatus::Ok
    })
}

/// Runs one check (`TP_IDENTITY_*`) and writes its report as JSON. Returns
/// `IdentityFails` with the report written when the identity does not hold.
///
/// # Safety
/// `p` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_verify(p: *const TpPolytope, identity: u32, out_json: *mut *mut c_char) -> TpStatus {
    guard(|| {
        let p = tri!(handle(p));
        tri!(check_out(out_json));
        *out_json = ptr::null_mut();
        let dp = &p.inner;
        let report = match identity {
            TP_IDENTITY_PICK => check_pick(dp),
            TP_IDENTITY_TODD => check_twisted_todd(dp),
            TP_IDENTITY_FACE_TODD => check_face_todd(dp),
            TP_IDENTITY_TETRAHEDRON => check_tetrahedron(dp),
            TP_IDENTITY_SIGNATURE => check_untwisted_signature(dp),
            TP_IDENTITY_U_INDEPENDENCE => check_u_independence(dp),
            other => {
                set_error(format!("unknown identity {other}"));
                return TpStatus::InvalidInput;
            }
        };
        match report {
            Ok(r) => write_report(&r, out_json),
            Err(e) => from_error(e),
        }
    })
}

/// Checks the twelve-dimensional Pontryagin-class identity.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_verify_agw(out_json: *mut *mut c_char) -> TpStatus {
    guard(|| {
        tri!(check_out(out_json));
        *out_json = ptr::null_mut();
        match verify_agw() {
            Ok(r) => write_report(&r, out_json),
            Err(e) => from_error(e),
        }
    })
}

/// Chern number for the partition `parts[0..len]` of the dimension.
///
/// # Safety
/// `p` must be a live handle; `parts` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_chern_number(
    p: *const TpPolytope,
    parts: *const u32,
    len: usize,
    out: *mut i64,
) -> TpStatus {
    guard(|| {
        let p = tri!(handle(p));
        tri!(check_out(out));
        if parts.is_null() {
            set_error("null partition");
            return TpStatus::NullPointer;
        }
        let parts = std::slice::from_raw_parts(parts, len).to_vec();
        let c = match Partition::new(parts).and_then(|w| p.inner.localizer().chern_number(&w)) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        match i64::try_from(&c.value) {
            Ok(v) => {
                *out = v;
                TpStatus::Ok
            }
            Err(_) => {
                set_error(format!("Chern number {} does not fit in 64 bits", c.value));
                TpStatus::Internal
            }
        }
    })
}

/// Number of lattice points in the polytope.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tp_count_points(p: *const TpPolytope, out: *mut u64) -> TpStatus {
    guard(|| {
        let p = tri!(handle(p));
        tri!(check_out(out));
        match p.inner.counts() {
            Ok(c) => {
                *out = c.total();
                TpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CP2: &str = r#"{"name":"cp2","dim":2,"facets":[{"normal":[1,0],"offset":0},{"normal":[0,1],"offset":0},{"normal":[-1,-1],"offset":-1}]}"#;

    fn load(json: &str) -> (TpStatus, *mut TpPolytope) {
        let text = CString::new(json).unwrap();
        let mut p = ptr::null_mut();
        let status = unsafe { tp_polytope_from_json(text.as_ptr(), &mut p) };
        (status, p)
    }

    #[test]
    fn handle_lifecycle() {
        let (status, p) = load(CP2);
        assert_eq!(status, TpStatus::Ok);
        let mut dim = 0;
        let mut m = 0;
        unsafe {
            assert_eq!(tp_polytope_dim(p, &mut dim), TpStatus::Ok);
            assert_eq!(tp_polytope_num_facets(p, &mut m), TpStatus::Ok);
            tp_polytope_free(p);
        }
        assert_eq!((dim, m), (2, 3));
    }

    #[test]
    fn null_arguments() {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { tp_polytope_from_json(ptr::null(), &mut p) }, TpStatus::NullPointer);
        assert!(!tp_last_error().is_null());
        let mut dim = 0;
        assert_eq!(unsafe { tp_polytope_dim(ptr::null(), &mut dim) }, TpStatus::NullPointer);
        unsafe {
            tp_polytope_free(ptr::null_mut());
            tp_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn invalid_utf8() {
        let bytes = [0xff_u8, 0xfe, 0];
        let mut p = ptr::null_mut();
        let status = unsafe { tp_polytope_from_json(bytes.as_ptr().cast(), &mut p) };
        assert_eq!(status, TpStatus::Utf8);
        assert!(p.is_null());
    }
}
