//! C ABI over `spslab`.
//!
//! Systems live behind an opaque [`SpsHandle`] created from a TOML
//! document and released with [`spslab_sps_free`]. Every fallible call
//! returns an [`SpslabStatus`]; on failure the message is available from
//! [`spslab_last_error`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spslab::doc::SpsDocument;
use spslab::sphere::{outcome_probability, simulate, SpherePoint, TestSpec};
use spslab::topological::{is_t_classical, topological_properties};
use spslab::{Error, FiniteSps};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpslabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Input text was not UTF-8.
    InvalidUtf8 = 2,
    /// Malformed document (syntax or unknown names).
    Parse = 3,
    /// The document parsed but the system violates its axioms.
    AxiomViolation = 4,
    /// An argument was out of its domain (e.g. a non-unit vector).
    InvalidArgument = 5,
    /// Any other library error.
    Failure = 6,
    /// A Rust panic was caught at the boundary.
    Panic = 7,
}

/// Opaque owner of a verified system.
pub struct SpsHandle {
    system: FiniteSps,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    // interior NULs would truncate the C string, so replace them
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: SpslabStatus, msg: impl Into<String>) -> SpslabStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> SpslabStatus {
    match e {
        Error::Parse { .. } | Error::Document(_) | Error::UnknownState(_) | Error::UnknownProperty(_) => {
            SpslabStatus::Parse
        }
        Error::AxiomViolation(_) => SpslabStatus::AxiomViolation,
        Error::InvalidTestSpec(_) | Error::EmptySample | Error::DegenerateSample(_) => SpslabStatus::InvalidArgument,
        _ => SpslabStatus::Failure,
    }
}

fn guard(f: impl FnOnce() -> SpslabStatus) -> SpslabStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SpslabStatus::Panic, "panic inside spslab"))
}

fn handle<'a>(h: *const SpsHandle) -> Result<&'a SpsHandle, SpslabStatus> {
    // SAFETY: callers pass either null or a pointer from spslab_sps_from_toml
    unsafe { h.as_ref() }.ok_or_else(|| fail(SpslabStatus::NullPointer, "null handle"))
}

/// Parses and verifies a system document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
/// On success `*out` owns a handle that must be freed with
/// [`spslab_sps_free`]; on failure `*out` is set to null.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_from_toml(text: *const c_char, out: *mut *mut SpsHandle) -> SpslabStatus {
    guard(|| {
        if out.is_null() || text.is_null() {
            return fail(SpslabStatus::NullPointer, "null argument");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            return fail(SpslabStatus::InvalidUtf8, "document is not UTF-8");
        };
        let built = SpsDocument::parse(text)
            .and_then(|d| d.resolve())
            .and_then(|p| p.into_system());
        match built {
            Ok((system, _, _)) => {
                *out = Box::into_raw(Box::new(SpsHandle { system }));
                SpslabStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_free(h: *mut SpsHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of states and properties of the system.
///
/// # Safety
/// `h` must be a live handle; the out pointers must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_counts(
    h: *const SpsHandle,
    n_states: *mut usize,
    n_props: *mut usize,
) -> SpslabStatus {
    guard(|| {
        let h = match handle(h) {
            Ok(h) => h,
            Err(s) => return s,
        };
        if let Some(n) = n_states.as_mut() {
            *n = h.system.n_states();
        }
        if let Some(n) = n_props.as_mut() {
            *n = h.system.n_props();
        }
        SpslabStatus::Ok
    })
}

/// Re-runs the axiom check; `*passed` is 1 if every axiom holds.
///
/// # Safety
/// `h` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_verify(h: *const SpsHandle, passed: *mut i32) -> SpslabStatus {
    guard(|| {
        let h = match handle(h) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let Some(passed) = passed.as_mut() else {
            return fail(SpslabStatus::NullPointer, "null output");
        };
        let report = h.system.verify_axioms();
        *passed = report.passed() as i32;
        if !report.passed() {
            set_error(report.to_string());
        }
        SpslabStatus::Ok
    })
}

/// Number of topological properties (always at least 2: bottom and top).
///
/// # Safety
/// `h` must be a live handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_topological_count(h: *const SpsHandle, count: *mut usize) -> SpslabStatus {
    guard(|| {
        let h = match handle(h) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let Some(count) = count.as_mut() else {
            return fail(SpslabStatus::NullPointer, "null output");
        };
        *count = topological_properties(&h.system).len();
        SpslabStatus::Ok
    })
}

/// `*result` is 1 when every property is topological.
///
/// # Safety
/// `h` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn spslab_sps_is_t_classical(h: *const SpsHandle, result: *mut i32) -> SpslabStatus {
    guard(|| {
        let h = match handle(h) {
            Ok(h) => h,
            Err(s) => return s,
        };
        let Some(result) = result.as_mut() else {
            return fail(SpslabStatus::NullPointer, "null output");
        };
        *result = is_t_classical(&h.system) as i32;
        SpslabStatus::Ok
    })
}

fn test_spec(state: &[f64; 3], axis: &[f64; 3], epsilon: f64, d: f64) -> Result<(SpherePoint, TestSpec), Error> {
    let p = SpherePoint::new(state[0], state[1], state[2])?;
    let u = SpherePoint::new(axis[0], axis[1], axis[2])?;
    Ok((p, TestSpec::new(u, epsilon, d)?))
}

/// Probability of the up outcome for unit vectors `state` and `axis`.
///
/// # Safety
/// `state` and `axis` must point to 3 doubles; `prob` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spslab_outcome_probability(
    state: *const f64,
    axis: *const f64,
    epsilon: f64,
    d: f64,
    prob: *mut f64,
) -> SpslabStatus {
    guard(|| {
        if state.is_null() || axis.is_null() || prob.is_null() {
            return fail(SpslabStatus::NullPointer, "null argument");
        }
        let state = &*(state as *const [f64; 3]);
        let axis = &*(axis as *const [f64; 3]);
        match test_spec(state, axis, epsilon, d) {
            Ok((p, t)) => {
                *prob = outcome_probability(&p, &t);
                SpslabStatus::Ok
            }
            Err(e) => fail(SpslabStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Runs `n` seeded trials; `*ups` receives the number of up outcomes.
/// The count depends only on the inputs and seed, not on thread count.
///
/// # Safety
/// `state` and `axis` must point to 3 doubles; `ups` must be valid.
#[no_mangle]
pub unsafe extern "C" fn spslab_simulate(
    state: *const f64,
    axis: *const f64,
    epsilon: f64,
    d: f64,
    n: u64,
    seed: u64,
    ups: *mut u64,
) -> SpslabStatus {
    guard(|| {
        if state.is_null() || axis.is_null() || ups.is_null() {
            return fail(SpslabStatus::NullPointer, "null argument");
        }
        let state = &*(state as *const [f64; 3]);
        let axis = &*(axis as *const [f64; 3]);
        let run = test_spec(state, axis, epsilon, d).and_then(|(p, t)| simulate(&p, &t, n, seed));
        match run {
            Ok(k) => {
                *ups = k;
                SpslabStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Message of the last failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn spslab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
