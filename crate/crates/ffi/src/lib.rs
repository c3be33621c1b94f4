//! C ABI for `subshift-core`.
//!
//! Subshifts and codes are opaque handles created and freed through this
//! API. Every function returns a [`SubshiftStatus`]; on failure the message
//! is available from [`subshift_last_error`] on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`subshift_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use subshift_core::codes::{code_from_json, enumerate_automorphisms, order_mod_shift, OrderModShift, SearchLimits, SlidingBlockCode};
use subshift_core::harness::{render_json, run_experiment, ExperimentConfig, SpecEntry};
use subshift_core::language::Subshift;
use subshift_core::two_dim::rect_complexity;
use subshift_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubshiftStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Config = 3,
    InvalidSpec = 4,
    MalformedCode = 5,
    ResourceLimit = 6,
    Compute = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A validated subshift.
pub struct SubshiftHandle {
    shift: Subshift,
}

/// A sliding block code bound to one subshift.
pub struct CodeHandle {
    code: SlidingBlockCode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SubshiftStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Config(_) => SubshiftStatus::Config,
            Error::InvalidAlphabet(_)
            | Error::UnknownSymbol(_)
            | Error::InvalidSpec(_)
            | Error::NonPrimitiveSubstitution
            | Error::EmptyLanguage => SubshiftStatus::InvalidSpec,
            Error::MalformedCode(_) | Error::SpecMismatch => SubshiftStatus::MalformedCode,
            Error::ResourceLimit(_) => SubshiftStatus::ResourceLimit,
            _ => SubshiftStatus::Compute,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SubshiftStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SubshiftStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SubshiftStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SubshiftStatus::NullArgument, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SubshiftStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(SubshiftStatus::Compute, "output contains a nul byte".into()))
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn subshift_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a subshift from one spec table in TOML, e.g. `type = "sft"\nforbidden = ["11"]`.
///
/// # Safety
/// `spec_toml` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_new(spec_toml: *const c_char, out: *mut *mut SubshiftHandle) -> SubshiftStatus {
    guard(|| {
        let entry = SpecEntry::from_toml(read_str(spec_toml)?)?;
        let shift = Subshift::new(entry.to_spec("ffi")?)?;
        write(out, Box::into_raw(Box::new(SubshiftHandle { shift })))
    })
}

/// # Safety
/// `h` must come from [`subshift_new`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn subshift_free(h: *mut SubshiftHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `P(n)`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_block_complexity(h: *const SubshiftHandle, n: usize, out: *mut u64) -> SubshiftStatus {
    guard(|| {
        let p = deref(h)?.shift.complexity(n)?;
        write(out, p)
    })
}

/// Writes `P(1..=n_max)` into `buf`, which must hold `n_max` entries.
///
/// # Safety
/// `h` must be a live handle; `buf` must have room for `buf_len` values.
#[no_mangle]
pub unsafe extern "C" fn subshift_complexity_table(
    h: *const SubshiftHandle,
    n_max: usize,
    buf: *mut u64,
    buf_len: usize,
) -> SubshiftStatus {
    guard(|| {
        let shift = &deref(h)?.shift;
        if buf.is_null() {
            return Err(null());
        }
        if buf_len < n_max {
            return Err(Failure(SubshiftStatus::BufferTooSmall, format!("need {n_max} entries, got {buf_len}")));
        }
        let table = shift.complexity_table(n_max)?;
        ptr::copy_nonoverlapping(table.as_ptr(), buf, table.len());
        Ok(())
    })
}

/// The code of `sigma^k`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_code_shift_power(
    h: *const SubshiftHandle,
    k: i64,
    out: *mut *mut CodeHandle,
) -> SubshiftStatus {
    guard(|| {
        let code = SlidingBlockCode::shift_power(&deref(h)?.shift, k)?;
        write(out, Box::into_raw(Box::new(CodeHandle { code })))
    })
}

/// A code from its JSON form (`{"range": N, "rule": {...}}`) or a certificate file.
///
/// # Safety
/// `h` must be a live handle, `json` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_code_from_json(
    h: *const SubshiftHandle,
    json: *const c_char,
    out: *mut *mut CodeHandle,
) -> SubshiftStatus {
    guard(|| {
        let code = code_from_json(&deref(h)?.shift, read_str(json)?)?;
        write(out, Box::into_raw(Box::new(CodeHandle { code })))
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn subshift_code_free(c: *mut CodeHandle) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Least `b <= max_b`, then least `|a| <= max_a`, with `sigma^a phi^b = id`.
/// `*found` is 1 and `b`, `a` are set when such a pair exists, else `*found` is 0.
///
/// # Safety
/// Handles must be live; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_order_mod_shift(
    h: *const SubshiftHandle,
    code: *const CodeHandle,
    max_b: usize,
    max_a: i64,
    found: *mut i32,
    b: *mut u64,
    a: *mut i64,
) -> SubshiftStatus {
    guard(|| {
        let r = order_mod_shift(&deref(h)?.shift, &deref(code)?.code, max_b, max_a)?;
        match r {
            OrderModShift::Found { b: bb, a: aa } => {
                write(found, 1)?;
                write(b, bb as u64)?;
                write(a, aa)
            }
            OrderModShift::BoundExhausted { .. } => write(found, 0),
        }
    })
}

/// Number of distinct `n x k` windows of `eta(i, j) = (phi^j x)(i)`.
///
/// # Safety
/// Handles must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_rect_complexity(
    h: *const SubshiftHandle,
    code: *const CodeHandle,
    n: usize,
    k: usize,
    out: *mut u64,
) -> SubshiftStatus {
    guard(|| {
        let c = rect_complexity(&deref(h)?.shift, &deref(code)?.code, n, k)?;
        write(out, c)
    })
}

/// Number of automorphisms of range `range` with inverse range at most
/// `max_inv_range`, at the shift's default endomorphy depth.
///
/// # Safety
/// `h` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn subshift_automorphism_count(
    h: *const SubshiftHandle,
    range: usize,
    max_inv_range: usize,
    out: *mut usize,
) -> SubshiftStatus {
    guard(|| {
        let shift = &deref(h)?.shift;
        let depth = shift.spec().default_depth(range);
        let r = enumerate_automorphisms(shift, range, max_inv_range, depth, SearchLimits::default())?;
        write(out, r.certificates.len())
    })
}

/// Runs a full experiment config (TOML) and returns the JSON report.
///
/// # Safety
/// `config_toml` nul-terminated; `out` writable. Free the result with [`subshift_string_free`].
#[no_mangle]
pub unsafe extern "C" fn subshift_run_experiment_json(config_toml: *const c_char, out: *mut *mut c_char) -> SubshiftStatus {
    guard(|| {
        let cfg = ExperimentConfig::from_toml(read_str(config_toml)?)?;
        let report = run_experiment(&cfg)?;
        write(out, into_c_string(render_json(&report)?)?)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn subshift_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
