//! C ABI over the qroof library: opaque channel handles, status codes,
//! and a thread-local error message. All pointers are borrowed for the
//! duration of the call unless documented otherwise.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::Vector3;
use qroof::concurrence::ConcurrenceError;
use qroof::entanglement::EntanglementError;
use qroof::{ChannelSpec, PositivityClass, QubitMap, State};

/// Opaque handle for a trace-preserving 1-qubit map.
pub struct QroofMap {
    inner: QubitMap,
}

/// Status code returned by every fallible call. `qroof_last_error`
/// holds the matching message.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QroofStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The channel description could not be parsed.
    ParseError = 2,
    /// The map is not positive, so roof quantities are undefined.
    NotPositive = 3,
    /// A numeric argument was outside its domain (state outside the
    /// Bloch ball, log base <= 1, ...).
    DomainError = 4,
    /// An unexpected internal failure; the message has details.
    InternalError = 5,
}

/// Positivity class of a map, mirroring the library's classification.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QroofPositivity {
    CompletelyPositive = 0,
    PositiveNotCp = 1,
    NotPositive = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: QroofStatus, msg: impl Into<Vec<u8>>) -> QroofStatus {
    let c = CString::new(msg).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
    status
}

/// Message for the most recent non-`Ok` status on this thread. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qroof_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn entanglement_status(e: &EntanglementError) -> QroofStatus {
    match e {
        EntanglementError::NotPositive => QroofStatus::NotPositive,
        EntanglementError::Concurrence(ConcurrenceError::NonRealEigenvalues { .. }) => {
            QroofStatus::NotPositive
        }
        EntanglementError::DomainError { .. } => QroofStatus::DomainError,
        _ => QroofStatus::InternalError,
    }
}

fn concurrence_status(e: &ConcurrenceError) -> QroofStatus {
    match e {
        ConcurrenceError::NonRealEigenvalues { .. } => QroofStatus::NotPositive,
        _ => QroofStatus::InternalError,
    }
}

/// Runs `f` with panics converted to `InternalError`.
fn guarded(f: impl FnOnce() -> QroofStatus) -> QroofStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(QroofStatus::InternalError, "internal panic"),
    }
}

unsafe fn map_ref<'a>(map: *const QroofMap) -> Option<&'a QubitMap> {
    map.as_ref().map(|m| &m.inner)
}

fn emit(out: *mut *mut QroofMap, inner: QubitMap) -> QroofStatus {
    if out.is_null() {
        return fail(QroofStatus::NullArgument, "out is null");
    }
    unsafe { *out = Box::into_raw(Box::new(QroofMap { inner })) };
    QroofStatus::Ok
}

/// Builds a map from a JSON channel description (the same format the
/// CLI accepts: kinds `general`, `axial`, `named`). On success `*out`
/// owns the handle; release it with `qroof_map_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qroof_map_from_json(
    json: *const c_char,
    out: *mut *mut QroofMap,
) -> QroofStatus {
    guarded(|| {
        if json.is_null() {
            return fail(QroofStatus::NullArgument, "json is null");
        }
        let text = match CStr::from_ptr(json).to_str() {
            Ok(t) => t,
            Err(_) => return fail(QroofStatus::ParseError, "json is not valid UTF-8"),
        };
        match ChannelSpec::parse(text) {
            Ok(spec) => emit(out, spec.to_map()),
            Err(e) => fail(QroofStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds the axial map `Lambda = diag(beta, beta, alpha + gamma - 1)`,
/// `t = (0, 0, alpha - gamma)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qroof_map_axial(
    alpha: f64,
    beta: f64,
    gamma: f64,
    out: *mut *mut QroofMap,
) -> QroofStatus {
    guarded(|| {
        let json = format!(r#"{{"kind":"axial","alpha":{alpha},"beta":{beta},"gamma":{gamma}}}"#);
        match ChannelSpec::parse(&json) {
            Ok(spec) => emit(out, spec.to_map()),
            Err(e) => fail(QroofStatus::ParseError, e.to_string()),
        }
    })
}

/// Builds the unital map `Lambda = diag(l1, l2, l3)`, `t = 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qroof_map_unital(
    l1: f64,
    l2: f64,
    l3: f64,
    out: *mut *mut QroofMap,
) -> QroofStatus {
    guarded(|| emit(out, QubitMap::unital(l1, l2, l3)))
}

/// Releases a handle returned by one of the constructors. Null is a
/// no-op.
///
/// # Safety
/// `map` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qroof_map_free(map: *mut QroofMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Classifies the map: completely positive, positive but not CP, or
/// not positive.
///
/// # Safety
/// `map` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qroof_map_positivity(
    map: *const QroofMap,
    out: *mut QroofPositivity,
) -> QroofStatus {
    guarded(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(QroofStatus::NullArgument, "map or out is null");
        };
        *out = match m.classify_positivity() {
            PositivityClass::CompletelyPositive => QroofPositivity::CompletelyPositive,
            PositivityClass::Positive => QroofPositivity::PositiveNotCp,
            PositivityClass::NotPositive => QroofPositivity::NotPositive,
        };
        QroofStatus::Ok
    })
}

/// Critical parameter `w` of the concurrence form: the second largest
/// eigenvalue of the flow.
///
/// # Safety
/// `map` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qroof_critical_w(map: *const QroofMap, out: *mut f64) -> QroofStatus {
    guarded(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(QroofStatus::NullArgument, "map or out is null");
        };
        match qroof::critical_w(m) {
            Ok(w) => {
                *out = w;
                QroofStatus::Ok
            }
            Err(e) => fail(concurrence_status(&e), e.to_string()),
        }
    })
}

fn state_from(x: f64, y: f64, z: f64) -> Result<State, QroofStatus> {
    State::new(Vector3::new(x, y, z))
        .map_err(|e| fail(QroofStatus::DomainError, e.to_string()))
}

fn require_positive(m: &QubitMap) -> Result<(), QroofStatus> {
    if m.classify_positivity().is_positive() {
        Ok(())
    } else {
        Err(fail(QroofStatus::NotPositive, "map is not positive"))
    }
}

/// Concurrence of the map's output for the input state with Bloch
/// vector `(x, y, z)`.
///
/// # Safety
/// `map` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qroof_concurrence(
    map: *const QroofMap,
    x: f64,
    y: f64,
    z: f64,
    out: *mut f64,
) -> QroofStatus {
    guarded(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(QroofStatus::NullArgument, "map or out is null");
        };
        if let Err(status) = require_positive(m) {
            return status;
        }
        let s = match state_from(x, y, z) {
            Ok(s) => s,
            Err(status) => return status,
        };
        match qroof::concurrence(m, &s) {
            Ok(c) => {
                *out = c;
                QroofStatus::Ok
            }
            Err(e) => fail(concurrence_status(&e), e.to_string()),
        }
    })
}

/// Entanglement entropy of the output for the input state with Bloch
/// vector `(x, y, z)`, in logarithms of the given `base` (> 1). `seed`
/// fixes the numerical search.
///
/// # Safety
/// `map` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn qroof_entanglement(
    map: *const QroofMap,
    x: f64,
    y: f64,
    z: f64,
    base: f64,
    seed: u64,
    out: *mut f64,
) -> QroofStatus {
    guarded(|| {
        let (Some(m), false) = (map_ref(map), out.is_null()) else {
            return fail(QroofStatus::NullArgument, "map or out is null");
        };
        if !(base > 1.0) {
            return fail(QroofStatus::DomainError, format!("log base {base} <= 1"));
        }
        if let Err(status) = require_positive(m) {
            return status;
        }
        let s = match state_from(x, y, z) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let budget = qroof::Budget {
            seed,
            ..qroof::Budget::default()
        };
        match qroof::entanglement(m, &s, &budget, base) {
            Ok(e) => {
                *out = e;
                QroofStatus::Ok
            }
            Err(e) => fail(entanglement_status(&e), e.to_string()),
        }
    })
}

/// One-shot classical capacity in bits. Writes the optimizing input
/// state's Bloch vector to `argmax` (length 3) when it is non-null.
/// `seed` fixes the numerical search.
///
/// # Safety
/// `map` and `out_chi` must be valid; `argmax` must be null or point
/// to at least 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn qroof_capacity(
    map: *const QroofMap,
    seed: u64,
    out_chi: *mut f64,
    argmax: *mut f64,
) -> QroofStatus {
    guarded(|| {
        let (Some(m), false) = (map_ref(map), out_chi.is_null()) else {
            return fail(QroofStatus::NullArgument, "map or out_chi is null");
        };
        if let Err(status) = require_positive(m) {
            return status;
        }
        let budget = qroof::Budget {
            seed,
            ..qroof::Budget::default()
        };
        match qroof::hsw_capacity(m, &budget) {
            Ok(r) => {
                *out_chi = r.chi;
                if !argmax.is_null() {
                    let v = r.argmax_state.bloch();
                    for (i, c) in v.iter().enumerate() {
                        *argmax.add(i) = *c;
                    }
                }
                QroofStatus::Ok
            }
            Err(e) => fail(entanglement_status(&e), e.to_string()),
        }
    })
}
