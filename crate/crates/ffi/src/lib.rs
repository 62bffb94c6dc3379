//! C ABI for the dihedral Griess-algebra library.
//!
//! The interface follows the usual opaque-handle pattern: `dg_algebra_build`
//! returns a heap-allocated handle, every accessor reports a [`DgStatus`],
//! and the most recent error message is kept in thread-local storage for
//! retrieval via `dg_last_error_message`.  All strings returned to the
//! caller are NUL-terminated, UTF-8, and owned by the caller, who must
//! release them with `dg_string_free`.

use dihedral_griess::algebra::{build_algebra, AlgebraError, DihedralAlgebra};
use dihedral_griess::classify::{classification_table, render_json};
use dihedral_griess::orbit::ParamRecord;
use dihedral_griess::rational::Rational;
use dihedral_griess::verify::verify_axioms;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

/// Result of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DgStatus {
    /// The call succeeded.
    Ok = 0,
    /// A pointer was null, a string was not valid UTF-8, or a parameter was
    /// outside the domain of the function (bad rational, unsupported orbit
    /// size).
    InvalidArgument = 1,
    /// The parameters are well-formed but no algebra exists at them: a
    /// classification constraint fails or a degenerate configuration is hit.
    InconsistentParameters = 2,
    /// The multiplication table does not close over the spanning set.
    NotClosed = 3,
    /// An internal invariant was violated (including a caught panic).
    Internal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

/// Opaque handle wrapping a fully built algebra.
pub struct DgAlgebra {
    inner: DihedralAlgebra,
}

fn set_error(message: impl Into<Vec<u8>>) {
    let message = CString::new(message).unwrap_or_else(|_| {
        CString::new("error message contained an interior NUL").expect("static message")
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: DgStatus, message: impl Into<Vec<u8>>) -> DgStatus {
    set_error(message);
    status
}

fn status_of(e: &AlgebraError) -> DgStatus {
    match e.code() {
        "validation" => DgStatus::InvalidArgument,
        "inconsistent-parameters" => DgStatus::InconsistentParameters,
        "not-closed" => DgStatus::NotClosed,
        _ => DgStatus::Internal,
    }
}

/// Runs `body`, converting panics into [`DgStatus::Internal`].
fn guarded(body: impl FnOnce() -> DgStatus) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(DgStatus::Internal, "caught panic in library call"),
    }
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn parse_rational(name: &str, ptr: *const c_char) -> Result<Rational, DgStatus> {
    if ptr.is_null() {
        return Err(fail(
            DgStatus::InvalidArgument,
            format!("{name} must not be null"),
        ));
    }
    let text = CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| fail(DgStatus::InvalidArgument, format!("{name} is not UTF-8")))?;
    Rational::from_str(text)
        .map_err(|e| fail(DgStatus::InvalidArgument, format!("{name}: {e}")))
}

fn emit_string(out: *mut *mut c_char, text: String) -> DgStatus {
    let Ok(text) = CString::new(text) else {
        return fail(DgStatus::Internal, "output contained an interior NUL");
    };
    // Safety: the caller guaranteed `out` is a valid pointer.
    unsafe { *out = text.into_raw() };
    clear_error();
    DgStatus::Ok
}

/// Builds the algebra on an orbit of size `n` (1 through 6) at the inner
/// products `lambda1 = (e|f)` and `lambda2 = (e|e^{tau_f})`, given as exact
/// fractions such as `"1/8"`.  On success stores a handle in `*out`; release
/// it with `dg_algebra_free`.
///
/// # Safety
/// `lambda1` and `lambda2` must be valid NUL-terminated strings and `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_algebra_build(
    n: u32,
    lambda1: *const c_char,
    lambda2: *const c_char,
    out: *mut *mut DgAlgebra,
) -> DgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(DgStatus::InvalidArgument, "out must not be null");
        }
        let l1 = match parse_rational("lambda1", lambda1) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let l2 = match parse_rational("lambda2", lambda2) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let params = match ParamRecord::new(l1, l2) {
            Ok(p) => p,
            Err(e) => return fail(DgStatus::InvalidArgument, e.to_string()),
        };
        match build_algebra(n as usize, params) {
            Ok(alg) => {
                *out = Box::into_raw(Box::new(DgAlgebra { inner: alg }));
                clear_error();
                DgStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a handle returned by `dg_algebra_build`.  Null is ignored.
///
/// # Safety
/// `alg` must be null or a handle obtained from `dg_algebra_build` that has
/// not already been freed.
#[no_mangle]
pub unsafe extern "C" fn dg_algebra_free(alg: *mut DgAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Stores the rank of the invariant bilinear form in `*out`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_algebra_rank(alg: *const DgAlgebra, out: *mut u32) -> DgStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(DgStatus::InvalidArgument, "null pointer argument");
        }
        *out = (*alg).inner.rank() as u32;
        clear_error();
        DgStatus::Ok
    })
}

/// Serializes the full algebra (basis, multiplication table, Gram matrix,
/// involutions) into `*out` as a JSON document.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer; release the string
/// with `dg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dg_algebra_to_json(
    alg: *const DgAlgebra,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(DgStatus::InvalidArgument, "null pointer argument");
        }
        let text = match serde_json::to_string(&(*alg).inner.to_json()) {
            Ok(text) => text,
            Err(e) => return fail(DgStatus::Internal, e.to_string()),
        };
        emit_string(out, text)
    })
}

/// Runs the full axiom verification suite and stores the report in `*out`
/// as a JSON document.  The status is `Ok` even when individual checks fail;
/// inspect the report's `passed` flags.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer; release the string
/// with `dg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dg_algebra_verify_json(
    alg: *const DgAlgebra,
    out: *mut *mut c_char,
) -> DgStatus {
    guarded(|| {
        if alg.is_null() || out.is_null() {
            return fail(DgStatus::InvalidArgument, "null pointer argument");
        }
        let report = verify_axioms(&(*alg).inner);
        let text = match serde_json::to_string(&report.to_json()) {
            Ok(text) => text,
            Err(e) => return fail(DgStatus::Internal, e.to_string()),
        };
        emit_string(out, text)
    })
}

/// Stores the full classification of admissible parameter pairs in `*out`
/// as a JSON array.
///
/// # Safety
/// `out` must be a valid pointer; release the string with `dg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn dg_classify_json(out: *mut *mut c_char) -> DgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(DgStatus::InvalidArgument, "out must not be null");
        }
        let text = match serde_json::to_string(&render_json(&classification_table())) {
            Ok(text) => text,
            Err(e) => return fail(DgStatus::Internal, e.to_string()),
        };
        emit_string(out, text)
    })
}

/// Releases a string returned by this library.  Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Returns the message of the most recent error on this thread, or null if
/// the last call succeeded.  The pointer is valid until the next library
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn dg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}
