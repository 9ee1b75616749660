//! C interface: opaque torus handles, integer status codes and a per-thread error message.
//!
//! Every function returns a `PtStatus`; on failure `pt_last_error` describes it until the
//! next call on the same thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use puptent::embedding::Embedded;
use puptent::report::{build_report, to_json_pretty, Mode, TorusReport};
use puptent::{Error, ModularParameter};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutsideDomain = 3,
    NotInterior = 4,
    Degenerate = 5,
    NoConvergence = 6,
    NotFlat = 7,
    Computation = 8,
    Panic = 9,
}

/// Generation mode of a torus.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtMode {
    Golden = 0,
    Deformed = 1,
    Solved = 2,
}

/// Verdict of the embedding test.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PtEmbedded {
    No = 0,
    Yes = 1,
    Degenerate = 2,
}

/// Opaque torus with its analysis.
pub struct PtTorus {
    report: TorusReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PtStatus {
    match e {
        Error::OutsideDomain { .. } => PtStatus::OutsideDomain,
        Error::NotInterior { .. } => PtStatus::NotInterior,
        Error::NonPositiveImaginary { .. } | Error::NonPositiveT { .. } | Error::Invalid(_) | Error::NotGoodBoundary(_) => {
            PtStatus::InvalidArgument
        }
        Error::DegenerateEdge { .. } | Error::ZeroDiameter | Error::SingularJacobian { .. } => PtStatus::Degenerate,
        Error::NoConvergence { .. } => PtStatus::NoConvergence,
        Error::NotFlat { .. } => PtStatus::NotFlat,
        _ => PtStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PtStatus, String)>) -> PtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PtStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PtStatus::Panic
        }
    }
}

fn fail(e: Error) -> (PtStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PtStatus, String) {
    (PtStatus::NullPointer, format!("{what} is null"))
}

/// Builds the torus at `z = x + iy` in the given mode; `t` is ignored for the golden tent.
///
/// # Safety
/// `out` must be valid for writing one pointer. The handle must be released with `pt_torus_free`.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_new(x: f64, y: f64, t: f64, mode: PtMode, out: *mut *mut PtTorus) -> PtStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let z = ModularParameter::classify(x, y).map_err(fail)?;
        if !z.is_in_closed_domain() {
            return Err(fail(Error::OutsideDomain { x, y }));
        }
        let mode = match mode {
            PtMode::Golden => Mode::Golden,
            PtMode::Deformed => Mode::Deformed,
            PtMode::Solved => Mode::Solved,
        };
        let report = build_report(&z, t, mode).map_err(fail)?;
        *out = Box::into_raw(Box::new(PtTorus { report }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `torus` must come from `pt_torus_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_free(torus: *mut PtTorus) {
    if !torus.is_null() {
        drop(Box::from_raw(torus));
    }
}

unsafe fn handle<'a>(torus: *const PtTorus) -> Result<&'a TorusReport, (PtStatus, String)> {
    torus.as_ref().map(|h| &h.report).ok_or_else(|| null("torus"))
}

/// Writes the 8 vertices as 24 doubles `P0.x, P0.y, P0.z, P1.x, ...`.
///
/// # Safety
/// `torus` must be a live handle and `out` valid for 24 doubles.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_vertices(torus: *const PtTorus, out: *mut f64) -> PtStatus {
    guard(|| {
        let r = handle(torus)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let flat: Vec<f64> = r.vertices.iter().flatten().copied().collect();
        ptr::copy_nonoverlapping(flat.as_ptr(), out, flat.len());
        Ok(())
    })
}

/// Writes the flatness defect; fails with `PT_STATUS_DEGENERATE` when an edge has collapsed.
///
/// # Safety
/// `torus` must be a live handle and `out` valid for one double.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_theta(torus: *const PtTorus, out: *mut f64) -> PtStatus {
    guard(|| {
        let r = handle(torus)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.theta.ok_or((PtStatus::Degenerate, "an edge has collapsed".to_string()))?;
        Ok(())
    })
}

/// Writes the embedding verdict and whether the sign list equals the reference.
///
/// # Safety
/// `torus` must be a live handle; `embedded` and `matches_reference` valid for one value each.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_embedding(
    torus: *const PtTorus,
    embedded: *mut PtEmbedded,
    matches_reference: *mut bool,
) -> PtStatus {
    guard(|| {
        let r = handle(torus)?;
        if embedded.is_null() || matches_reference.is_null() {
            return Err(null("output"));
        }
        *embedded = match r.embedding.embedded {
            Embedded::Yes => PtEmbedded::Yes,
            Embedded::No => PtEmbedded::No,
            Embedded::Degenerate => PtEmbedded::Degenerate,
        };
        *matches_reference = r.matches_reference;
        Ok(())
    })
}

/// Number of convex-hull faces whose three vertices are torus vertices.
///
/// # Safety
/// `torus` must be a live handle and `out` valid for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_hull_triangle_count(torus: *const PtTorus, out: *mut usize) -> PtStatus {
    guard(|| {
        let r = handle(torus)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = r.hull_triangles.len();
        Ok(())
    })
}

/// The full report as pretty JSON; release with `pt_string_free`.
///
/// # Safety
/// `torus` must be a live handle and `out` valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn pt_torus_to_json(torus: *const PtTorus, out: *mut *mut c_char) -> PtStatus {
    guard(|| {
        let r = handle(torus)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = to_json_pretty(r).map_err(fail)?;
        let c = CString::new(text).map_err(|e| (PtStatus::Computation, e.to_string()))?;
        *out = c.into_raw();
        Ok(())
    })
}

/// Releases a string from this library; null is ignored.
///
/// # Safety
/// `s` must come from `pt_torus_to_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string. Owned by the library.
#[no_mangle]
pub extern "C" fn pt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pt_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => c"",
    };
    VERSION.as_ptr()
}
