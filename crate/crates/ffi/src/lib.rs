//! C ABI over `winger_core`.
//!
//! Every entry point returns a [`WingerStatus`]. On failure the message is kept per thread and can be
//! read with [`winger_last_error`]. Strings handed out by the library are owned by the caller and must be
//! released with [`winger_string_free`]; contexts with [`winger_context_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use winger_core::certify::emit::{emit, EmitObject, Format};
use winger_core::certify::{run, select, Context, Options};
use winger_core::monodromy::{Convention, SL2Mat};
use winger_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WingerStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Construction = 3,
    Certificate = 4,
    Arithmetic = 5,
    Overflow = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WingerConvention {
    Standard = 0,
    Repbas = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WingerFormat {
    Json = 0,
    Csv = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WingerMatrix {
    Edge = 0,
    Trc = 1,
    Zero = 2,
    MinusOne = 3,
    EdgeTrc = 4,
}

/// Opaque handle to a fully built and self-checked model.
pub struct WingerContext {
    inner: Context,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> WingerStatus {
    match e {
        Error::DivisionByZero => WingerStatus::Arithmetic,
        Error::UnknownLattice(_) | Error::InvalidArgument(_) => WingerStatus::InvalidArgument,
        Error::NotACharacter(_) | Error::Certificate(_) => WingerStatus::Certificate,
        Error::Construction(_) => WingerStatus::Construction,
    }
}

struct Failure(WingerStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WingerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WingerStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside winger".into());
            WingerStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(WingerStatus::NullPointer, format!("{what} is null"))
}

unsafe fn context<'a>(ctx: *const WingerContext) -> Result<&'a Context, Failure> {
    ctx.as_ref().map(|c| &c.inner).ok_or_else(|| null("context"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Failure(WingerStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn hand_out(s: String, out: *mut *mut c_char) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(WingerStatus::InvalidArgument, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn convention(c: WingerConvention) -> Convention {
    match c {
        WingerConvention::Standard => Convention::Standard,
        WingerConvention::Repbas => Convention::Repbas,
    }
}

/// Library version as a static NUL-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn winger_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the next failing call.
#[no_mangle]
pub extern "C" fn winger_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the model. `swap_tetrads` exchanges E and iota E.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn winger_context_new(swap_tetrads: bool, conv: WingerConvention, out: *mut *mut WingerContext) -> WingerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let options = Options { swap_tetrads, convention: convention(conv), inject_fault: false };
        let inner = Context::build(options)?;
        *out = Box::into_raw(Box::new(WingerContext { inner }));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be NULL or a handle from [`winger_context_new`] that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn winger_context_free(ctx: *mut WingerContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Runs the checks whose id matches `pattern` (all of them when NULL) and stores the counts.
///
/// # Safety
/// `ctx` must be a live handle, `pattern` NULL or a NUL-terminated string, `passed` and `total` writable.
#[no_mangle]
pub unsafe extern "C" fn winger_verify(
    ctx: *const WingerContext,
    pattern: *const c_char,
    passed: *mut usize,
    total: *mut usize,
) -> WingerStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if passed.is_null() || total.is_null() {
            return Err(null("count output"));
        }
        let filter = if pattern.is_null() { None } else { Some(text(pattern, "pattern")?) };
        let report = run(ctx, &select(filter)?, false);
        *passed = report.summary.pass;
        *total = report.summary.total;
        Ok(())
    })
}

/// Full report as JSON.
///
/// # Safety
/// `ctx` must be a live handle and `out` writable. Free the result with [`winger_string_free`].
#[no_mangle]
pub unsafe extern "C" fn winger_report_json(ctx: *const WingerContext, out: *mut *mut c_char) -> WingerStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = run(ctx, &select(None)?, false);
        hand_out(report.to_json(), out)
    })
}

/// Serializes one object (`"dodecahedron"`, `"group"`, `"complex"`, `"form"`, `"characters"`, `"hom"`,
/// `"monodromy"`, `"cosets"` or `"cusps"`).
///
/// # Safety
/// `ctx` must be a live handle, `object` a NUL-terminated string and `out` writable.
/// Free the result with [`winger_string_free`].
#[no_mangle]
pub unsafe extern "C" fn winger_emit(
    ctx: *const WingerContext,
    object: *const c_char,
    format: WingerFormat,
    out: *mut *mut c_char,
) -> WingerStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let object: EmitObject = text(object, "object")?.parse()?;
        let format = match format {
            WingerFormat::Json => Format::Json,
            WingerFormat::Csv => Format::Csv,
        };
        hand_out(emit(ctx, object, format)?, out)
    })
}

/// Writes `[a, b, c, d]` of the requested local monodromy, row-major, in the given basis convention.
///
/// # Safety
/// `ctx` must be a live handle and `out` must point to four writable `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn winger_monodromy(
    ctx: *const WingerContext,
    which: WingerMatrix,
    conv: WingerConvention,
    out: *mut i64,
) -> WingerStatus {
    guard(|| {
        let ctx = context(ctx)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let table = ctx.monodromy.table.in_convention(convention(conv));
        let m: &SL2Mat = match which {
            WingerMatrix::Edge => &table.rho_edge,
            WingerMatrix::Trc => &table.rho_trc,
            WingerMatrix::Zero => &table.rho_zero,
            WingerMatrix::MinusOne => &table.rho_minus_one,
            WingerMatrix::EdgeTrc => &table.rho_edge_trc,
        };
        let mut entries = [0i64; 4];
        for (slot, v) in entries.iter_mut().zip([&m.a, &m.b, &m.c, &m.d]) {
            *slot = i64::try_from(v).map_err(|_| Failure(WingerStatus::Overflow, format!("entry {v} exceeds int64")))?;
        }
        ptr::copy_nonoverlapping(entries.as_ptr(), out, 4);
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn winger_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::DivisionByZero), WingerStatus::Arithmetic);
        assert_eq!(status_of(&Error::InvalidArgument("x".into())), WingerStatus::InvalidArgument);
        assert_eq!(status_of(&Error::Construction("x".into())), WingerStatus::Construction);
    }

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, WingerStatus::Panic);
        assert!(!winger_last_error().is_null());
    }

    #[test]
    fn version_is_terminated() {
        let v = unsafe { CStr::from_ptr(winger_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
