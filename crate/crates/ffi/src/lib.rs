//! C ABI over `ade-chambers`.
//!
//! Objects are opaque handles created by `*_new`/`*_enumerate` and released
//! with the matching `*_free`. Every fallible call returns an [`AdeStatus`];
//! the message of the last failure on the calling thread is available from
//! [`ade_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use ade_chambers::chambers::{enumerate_chambers_with, ChamberStructure, EnumerateOptions};
use ade_chambers::cli;
use ade_chambers::{knit, Configuration, DynkinType, Error, ErrorKind};

/// Status codes; 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdeStatus {
    Ok = 0,
    InputError = 2,
    ConsistencyError = 3,
    ResourceError = 4,
    NullArgument = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// Retained curves of a partial resolution.
pub struct AdeConfiguration(Configuration);

/// An enumerated chamber structure.
pub struct AdeChambers(ChamberStructure);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(e: Error) -> AdeStatus {
    set_error(e.to_string());
    match e.kind() {
        ErrorKind::Input => AdeStatus::InputError,
        ErrorKind::Consistency => AdeStatus::ConsistencyError,
        ErrorKind::Resource => AdeStatus::ResourceError,
    }
}

fn guard(f: impl FnOnce() -> AdeStatus) -> AdeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            AdeStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, AdeStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(AdeStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        AdeStatus::InputError
    })
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ade_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a configuration from a diagram name such as `"E7"` and `len`
/// vertex indices.
///
/// # Safety
/// `diagram` must be a NUL-terminated string, `slots` must point to `len`
/// readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ade_configuration_new(
    diagram: *const c_char,
    slots: *const usize,
    len: usize,
    out: *mut *mut AdeConfiguration,
) -> AdeStatus {
    guard(|| {
        if out.is_null() || (slots.is_null() && len > 0) {
            set_error("null argument");
            return AdeStatus::NullArgument;
        }
        let name = match text(diagram) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let slots = if len == 0 { Vec::new() } else { slice::from_raw_parts(slots, len).to_vec() };
        match name.parse::<DynkinType>().and_then(|ty| Configuration::of_type(ty, slots)) {
            Ok(c) => {
                *out = Box::into_raw(Box::new(AdeConfiguration(c)));
                AdeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Builds a configuration from a JSON problem spec (labels and aliases allowed).
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ade_configuration_from_spec(spec: *const c_char, out: *mut *mut AdeConfiguration) -> AdeStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return AdeStatus::NullArgument;
        }
        let spec = match text(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match cli::parse_spec(spec) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(AdeConfiguration(s.configuration())));
                AdeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `config` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ade_configuration_free(config: *mut AdeConfiguration) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Number of slots.
///
/// # Safety
/// `config` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ade_configuration_len(config: *const AdeConfiguration) -> usize {
    config.as_ref().map_or(0, |c| c.0.len())
}

/// Knits the exchange sequence at `slot` (0-based). Writes the replacing
/// vertex to `new_vertex` and the approximation multiplicity of every
/// diagram vertex to `b`, which must hold `b_len` >= vertex count entries.
///
/// # Safety
/// `config` must be a live handle, `new_vertex` writable and `b` writable
/// for `b_len` entries.
#[no_mangle]
pub unsafe extern "C" fn ade_knit(
    config: *const AdeConfiguration,
    slot: usize,
    new_vertex: *mut usize,
    b: *mut u32,
    b_len: usize,
) -> AdeStatus {
    guard(|| {
        let (Some(config), false, false) = (config.as_ref(), new_vertex.is_null(), b.is_null()) else {
            set_error("null argument");
            return AdeStatus::NullArgument;
        };
        let n = config.0.diagram().vertex_count();
        if b_len < n {
            set_error(format!("b needs {n} entries"));
            return AdeStatus::BufferTooSmall;
        }
        match knit(&config.0, slot) {
            Ok(x) => {
                let out = slice::from_raw_parts_mut(b, b_len);
                out.fill(0);
                for (v, m) in out.iter_mut().enumerate().take(n) {
                    *m = x.coefficient(v);
                }
                *new_vertex = x.new_vertex;
                AdeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Enumerates every chamber, cross-checked against the root arrangement
/// when `oracle` is true.
///
/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_enumerate(
    config: *const AdeConfiguration,
    oracle: bool,
    out: *mut *mut AdeChambers,
) -> AdeStatus {
    guard(|| {
        let (Some(config), false) = (config.as_ref(), out.is_null()) else {
            set_error("null argument");
            return AdeStatus::NullArgument;
        };
        match enumerate_chambers_with(&config.0, EnumerateOptions { oracle }) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(AdeChambers(s)));
                AdeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `chambers` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_free(chambers: *mut AdeChambers) {
    if !chambers.is_null() {
        drop(Box::from_raw(chambers));
    }
}

/// # Safety
/// `chambers` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_count(chambers: *const AdeChambers) -> usize {
    chambers.as_ref().map_or(0, |s| s.0.chambers.len())
}

/// # Safety
/// `chambers` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_wall_count(chambers: *const AdeChambers) -> usize {
    chambers.as_ref().map_or(0, |s| s.0.walls.len())
}

/// Coefficients of wall `index` (one per slot) into `coeffs`.
///
/// # Safety
/// `chambers` must be a live handle and `coeffs` writable for `len` entries.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_wall(
    chambers: *const AdeChambers,
    index: usize,
    coeffs: *mut i64,
    len: usize,
) -> AdeStatus {
    guard(|| {
        let (Some(s), false) = (chambers.as_ref(), coeffs.is_null()) else {
            set_error("null argument");
            return AdeStatus::NullArgument;
        };
        let Some(w) = s.0.walls.get(index) else {
            set_error(format!("wall {index} out of range"));
            return AdeStatus::InputError;
        };
        if len < w.dim() {
            set_error(format!("coeffs needs {} entries", w.dim()));
            return AdeStatus::BufferTooSmall;
        }
        slice::from_raw_parts_mut(coeffs, len)[..w.dim()].copy_from_slice(w.coeffs());
        AdeStatus::Ok
    })
}

/// Lower and upper bounds on the number of minimal models.
///
/// # Safety
/// `chambers` must be a live handle; `lower` and `upper` writable.
#[no_mangle]
pub unsafe extern "C" fn ade_chambers_bounds(
    chambers: *const AdeChambers,
    lower: *mut usize,
    upper: *mut usize,
) -> AdeStatus {
    let (Some(s), false, false) = (chambers.as_ref(), lower.is_null(), upper.is_null()) else {
        set_error("null argument");
        return AdeStatus::NullArgument;
    };
    *lower = s.0.bounds.lower;
    *upper = s.0.bounds.upper;
    AdeStatus::Ok
}

/// Runs the full report for a JSON spec and returns the report JSON,
/// to be released with [`ade_string_free`].
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ade_report_json(spec: *const c_char, out: *mut *mut c_char) -> AdeStatus {
    guard(|| {
        if out.is_null() {
            set_error("null argument");
            return AdeStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let spec = match text(spec) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match cli::parse_spec(spec).and_then(|s| cli::build_report(&s)) {
            Ok(a) => {
                *out = CString::new(a.json).expect("JSON has no NUL").into_raw();
                AdeStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ade_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
