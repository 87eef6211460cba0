//! C ABI for stabforge.
//!
//! Codes live behind an opaque [`StabCode`] handle. Every fallible function
//! returns a [`StabStatus`]; on failure a message for the calling thread is
//! available from [`stab_last_error_message`]. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`stab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};

use stabforge::bounds;
use stabforge::cli::parse_error_operator;
use stabforge::family::{build_code, CodeSpec};
use stabforge::StabilizerGroup;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    InvalidCode = 5,
    Panic = 6,
}

/// A validated stabilizer code.
pub struct StabCode {
    spec: CodeSpec,
    group: StabilizerGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

fn fail(status: StabStatus, msg: impl Into<String>) -> StabStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning a panic into [`StabStatus::Panic`].
fn guard(f: impl FnOnce() -> StabStatus) -> StabStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(StabStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, StabStatus> {
    if s.is_null() {
        return Err(fail(StabStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(StabStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> StabStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            StabStatus::Ok
        }
        Err(_) => fail(StabStatus::InvalidArgument, "result contains a nul byte"),
    }
}

unsafe fn code_ref<'a>(code: *const StabCode) -> Result<&'a StabCode, StabStatus> {
    code.as_ref().ok_or_else(|| fail(StabStatus::NullPointer, "null code handle"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

fn into_handle(spec: CodeSpec) -> Result<Box<StabCode>, StabStatus> {
    let group = spec
        .stabilizer_group()
        .map_err(|e| fail(StabStatus::InvalidCode, e.to_string()))?;
    Ok(Box::new(StabCode { spec, group }))
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn stab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the `2^j`-qubit family member, `3 <= j <= 16`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn stab_family_build(j: u32, out: *mut *mut StabCode) -> StabStatus {
    guard(|| {
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let spec = try_status!(build_code(j as usize).map_err(|e| fail(StabStatus::InvalidArgument, e.to_string())));
        *out = Box::into_raw(try_status!(into_handle(spec)));
        StabStatus::Ok
    })
}

/// Parses and validates a code file.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stab_code_from_json(json: *const c_char, out: *mut *mut StabCode) -> StabStatus {
    guard(|| {
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let text = try_status!(read_str(json));
        let spec = try_status!(CodeSpec::from_json(text).map_err(|e| fail(StabStatus::ParseError, e.to_string())));
        *out = Box::into_raw(try_status!(into_handle(spec)));
        StabStatus::Ok
    })
}

/// Serializes a code; free the result with [`stab_string_free`].
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stab_code_to_json(code: *const StabCode, out: *mut *mut c_char) -> StabStatus {
    guard(|| {
        let code = try_status!(code_ref(code));
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        write_string(out, code.spec.to_json())
    })
}

/// Qubit count, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stab_code_n(code: *const StabCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.n)
}

/// Logical qubit count, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stab_code_k(code: *const StabCode) -> usize {
    code.as_ref().map_or(0, |c| c.spec.k)
}

/// Generator count, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stab_code_a(code: *const StabCode) -> usize {
    code.as_ref().map_or(0, |c| c.group.a())
}

/// Generator `r` (1-based) as a signed string such as `+XIXIZYZY`.
///
/// # Safety
/// `code` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stab_code_generator(code: *const StabCode, r: usize, out: *mut *mut c_char) -> StabStatus {
    guard(|| {
        let code = try_status!(code_ref(code));
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        if r == 0 || r > code.group.a() {
            return fail(StabStatus::InvalidArgument, format!("generator index {r} out of range 1..={}", code.group.a()));
        }
        write_string(out, code.group.generator(r).to_text())
    })
}

/// Syndrome of an error given as a full string (`+IIIIIYII`) or sparse
/// factors (`Y6`), written as a string of `0`/`1` with `M_1` first.
///
/// # Safety
/// `code` must be a live handle; `error` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn stab_code_syndrome(
    code: *const StabCode,
    error: *const c_char,
    out: *mut *mut c_char,
) -> StabStatus {
    guard(|| {
        let code = try_status!(code_ref(code));
        let text = try_status!(read_str(error));
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        let op = try_status!(parse_error_operator(text, code.spec.n).map_err(|e| fail(StabStatus::ParseError, e)));
        match code.group.syndrome(&op) {
            Ok(s) => write_string(out, s.to_string()),
            Err(e) => fail(StabStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Whether every error of weight `<= t` has its own syndrome.
///
/// # Safety
/// `code` must be a live handle; `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn stab_code_check_correctability(code: *const StabCode, t: usize, passed: *mut bool) -> StabStatus {
    guard(|| {
        let code = try_status!(code_ref(code));
        if passed.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        *passed = code.group.check_correctability(t).passed();
        StabStatus::Ok
    })
}

/// Largest `k` allowed by the quantum Hamming bound, or -1 if none.
#[no_mangle]
pub extern "C" fn stab_qhb_max_k(n: usize, t: usize) -> i64 {
    bounds::qhb_max_k(n, t)
}

/// Bound on `k` for a one-error code with `l` degeneracy conditions.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn stab_degenerate_max_k(n: usize, l: usize, out: *mut i64) -> StabStatus {
    guard(|| {
        if out.is_null() {
            return fail(StabStatus::NullPointer, "null output pointer");
        }
        match bounds::degenerate_max_k(n, l) {
            Ok(k) => {
                *out = k;
                StabStatus::Ok
            }
            Err(e) => fail(StabStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stab_code_free(code: *mut StabCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn stab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
