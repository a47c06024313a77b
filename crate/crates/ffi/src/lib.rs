//! C interface to `tropos`.
//!
//! Graphs and divisors are opaque handles. Every call returns a
//! [`TroposStatus`]; on failure the message is available from
//! [`tropos_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and released
//! with [`tropos_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tropos::error::Error;
use tropos::{canonical_divisor, Divisor, MetricGraph};

/// Opaque metric graph.
pub struct TroposGraph(MetricGraph);

/// Opaque divisor on a graph.
pub struct TroposDivisor(Divisor);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TroposStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    InvalidDivisor = 5,
    NotEffective = 6,
    NotInCanonicalSystem = 7,
    BudgetExceeded = 8,
    InvalidArgument = 9,
    Computation = 10,
    Panic = 99,
}

impl From<&Error> for TroposStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidRational(_) => TroposStatus::Parse,
            Error::DuplicateId(_)
            | Error::NonPositiveLength(_)
            | Error::DanglingEndpoint { .. }
            | Error::EmptyGraph
            | Error::DisconnectedInput => TroposStatus::InvalidGraph,
            Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::InvalidOffset { .. } => {
                TroposStatus::InvalidDivisor
            }
            Error::NotEffective | Error::NotEffectiveAway(_) => TroposStatus::NotEffective,
            Error::NotInCanonicalSystem => TroposStatus::NotInCanonicalSystem,
            Error::BudgetExceeded { .. } => TroposStatus::BudgetExceeded,
            Error::InvalidArgument(_) => TroposStatus::InvalidArgument,
            _ => TroposStatus::Computation,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(TroposStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), format!("{}: {e}", e.kind()))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TroposStatus {
    set_error(String::new());
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TroposStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TroposStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(TroposStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(TroposStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(TroposStatus::NullPointer, "null handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(TroposStatus::NullPointer, "null output pointer".into()))
}

fn parse_json(s: &str) -> Result<serde_json::Value, Fail> {
    serde_json::from_str(s).map_err(|e| Fail(TroposStatus::Parse, e.to_string()))
}

unsafe fn write_json(dst: *mut *mut c_char, v: &serde_json::Value) -> Result<(), Fail> {
    let dst = out(dst)?;
    let s = serde_json::to_string(v).expect("json renders");
    *dst = CString::new(s).expect("json has no NUL").into_raw();
    Ok(())
}

/// Message for the last failed call on this thread. Empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn tropos_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tropos_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a graph from the JSON graph format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `graph` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_graph_from_json(json: *const c_char, graph: *mut *mut TroposGraph) -> TroposStatus {
    guard(|| {
        let v = parse_json(str_arg(json)?)?;
        let spec = serde_json::from_value(v).map_err(|e| Fail(TroposStatus::Parse, e.to_string()))?;
        let g = MetricGraph::build(&spec)?;
        *out(graph)? = Box::into_raw(Box::new(TroposGraph(g)));
        Ok(())
    })
}

/// Builds a named graph from the built-in catalog.
///
/// # Safety
/// `name` must be a NUL-terminated string and `graph` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_graph_from_catalog(name: *const c_char, graph: *mut *mut TroposGraph) -> TroposStatus {
    guard(|| {
        let g = tropos::catalog::by_name(str_arg(name)?)?;
        *out(graph)? = Box::into_raw(Box::new(TroposGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tropos_graph_free(graph: *mut TroposGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Arithmetic genus (first Betti number plus vertex weights).
///
/// # Safety
/// `graph` must be a live handle and `genus` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_graph_genus(graph: *const TroposGraph, genus: *mut i64) -> TroposStatus {
    guard(|| {
        *out(genus)? = handle(graph)?.0.arithmetic_genus();
        Ok(())
    })
}

/// The graph in the JSON graph format.
///
/// # Safety
/// `graph` must be a live handle and `json` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_graph_to_json(graph: *const TroposGraph, json: *mut *mut c_char) -> TroposStatus {
    guard(|| {
        let spec = serde_json::to_value(handle(graph)?.0.to_spec()).expect("serializes");
        write_json(json, &spec)
    })
}

/// Parses a divisor (list of `{"at", "mult"}`) and checks it against `graph`.
///
/// # Safety
/// Pointers must be valid; `json` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn tropos_divisor_from_json(
    graph: *const TroposGraph,
    json: *const c_char,
    divisor: *mut *mut TroposDivisor,
) -> TroposStatus {
    guard(|| {
        let g = &handle(graph)?.0;
        let d = Divisor::from_json(&parse_json(str_arg(json)?)?)?;
        d.validate(g)?;
        *out(divisor)? = Box::into_raw(Box::new(TroposDivisor(d)));
        Ok(())
    })
}

/// The canonical divisor of `graph`.
///
/// # Safety
/// `graph` must be a live handle and `divisor` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_divisor_canonical(
    graph: *const TroposGraph,
    divisor: *mut *mut TroposDivisor,
) -> TroposStatus {
    guard(|| {
        let k = canonical_divisor(&handle(graph)?.0);
        *out(divisor)? = Box::into_raw(Box::new(TroposDivisor(k)));
        Ok(())
    })
}

/// # Safety
/// `divisor` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tropos_divisor_free(divisor: *mut TroposDivisor) {
    if !divisor.is_null() {
        drop(Box::from_raw(divisor));
    }
}

/// # Safety
/// `divisor` must be a live handle and `degree` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_divisor_degree(divisor: *const TroposDivisor, degree: *mut i64) -> TroposStatus {
    guard(|| {
        *out(degree)? = handle(divisor)?.0.degree();
        Ok(())
    })
}

/// # Safety
/// `divisor` must be a live handle and `json` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_divisor_to_json(divisor: *const TroposDivisor, json: *mut *mut c_char) -> TroposStatus {
    guard(|| write_json(json, &handle(divisor)?.0.to_json()))
}

/// Rank of `divisor` on the unit model subdivided `subdivision` times.
///
/// # Safety
/// Handles must be live and `rank` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_rank(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    subdivision: u32,
    rank: *mut i64,
) -> TroposStatus {
    guard(|| {
        let r = tropos::reduction::rank(&handle(graph)?.0, &handle(divisor)?.0, subdivision)?;
        *out(rank)? = r.rank;
        Ok(())
    })
}

/// Linearly equivalent divisor reduced at host vertex `base`, on the unit
/// model subdivided `subdivision` times. Returns a new divisor handle.
///
/// # Safety
/// Handles must be live, `base` NUL-terminated and `reduced` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_reduce(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    base: *const c_char,
    subdivision: u32,
    reduced: *mut *mut TroposDivisor,
) -> TroposStatus {
    guard(|| {
        let g = &handle(graph)?.0;
        let d = &handle(divisor)?.0;
        let v = g.vertex_index(str_arg(base)?)?;
        let model = tropos::UnitModel::new(g, &d.support(), subdivision)?;
        let r = tropos::reduction::reduce(&model.chips, &model.config(d)?, model.refinement.vertex(v))?;
        *out(reduced)? = Box::into_raw(Box::new(TroposDivisor(model.divisor(&r.reduced))));
        Ok(())
    })
}

/// Members of |D| on the grid, as JSON. `state_cap` 0 means the default cap.
///
/// # Safety
/// Handles must be live and `json` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_linear_system(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    subdivision: u32,
    state_cap: usize,
    json: *mut *mut c_char,
) -> TroposStatus {
    guard(|| {
        let sys = tropos::tropical::enumerate_linear_system(
            &handle(graph)?.0,
            &handle(divisor)?.0,
            subdivision,
            cap(state_cap),
        )?;
        write_json(json, &sys.to_json())
    })
}

/// Extremal members of |D| on the grid, as JSON.
///
/// # Safety
/// Handles must be live and `json` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_extremals(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    subdivision: u32,
    state_cap: usize,
    json: *mut *mut c_char,
) -> TroposStatus {
    guard(|| {
        let sys = tropos::tropical::extremals(&handle(graph)?.0, &handle(divisor)?.0, subdivision, cap(state_cap))?;
        write_json(json, &sys.to_json())
    })
}

/// Grid survey of the cells of |D|, as JSON.
///
/// # Safety
/// Handles must be live and `json` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_cells(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    subdivision: u32,
    state_cap: usize,
    json: *mut *mut c_char,
) -> TroposStatus {
    guard(|| {
        let survey = tropos::cells::maximal_cells(&handle(graph)?.0, &handle(divisor)?.0, subdivision, cap(state_cap))?;
        write_json(json, &survey.to_json())
    })
}

/// Realizability of an effective canonical divisor. `report` may be null.
///
/// # Safety
/// Handles must be live and `realizable` a valid output pointer.
#[no_mangle]
pub unsafe extern "C" fn tropos_is_realizable(
    graph: *const TroposGraph,
    divisor: *const TroposDivisor,
    realizable: *mut bool,
    report: *mut *mut c_char,
) -> TroposStatus {
    guard(|| {
        let r = tropos::realizability::is_realizable_canonical(&handle(graph)?.0, &handle(divisor)?.0)?;
        *out(realizable)? = r.realizable;
        if !report.is_null() {
            write_json(report, &serde_json::to_value(&r).expect("serializes"))?;
        }
        Ok(())
    })
}

fn cap(state_cap: usize) -> usize {
    if state_cap == 0 {
        tropos::tropical::DEFAULT_STATE_CAP
    } else {
        state_cap
    }
}
