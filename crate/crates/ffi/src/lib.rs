//! C interface to `interval-coloring`.
//!
//! Graphs and colorings live behind opaque handles that the caller frees
//! with `ic_graph_free` and `ic_coloring_free`. Every fallible function
//! returns an [`IcStatus`]; on a negative status `ic_last_error` describes
//! the failure. Strings returned through `char **` out-parameters are owned
//! by the caller and released with `ic_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use interval_coloring::gadgets::{build_boldf, build_f, explicit_coloring_f, realize_t, BoldFBlueprint, GadgetError};
use interval_coloring::{compute_spectrum, find_coloring, verify_interval, Budget, Decision, EdgeColoring, Graph};

/// Result codes. Non-negative values are answers, negative values errors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcStatus {
    Ok = 0,
    /// A definite negative answer, such as "no coloring with t colors".
    None = 1,
    /// The budget ran out before an answer.
    Timeout = 2,
    NullPointer = -1,
    InvalidUtf8 = -2,
    ParseError = -3,
    InvalidArgument = -4,
    NotInSpectrum = -5,
    WrongGraph = -6,
    Panic = -99,
}

/// A graph, possibly remembering the gadget it was built as.
pub struct IcGraph {
    graph: Graph,
    boldf: Option<BoldFBlueprint>,
}

/// An edge coloring indexed by the edges of the graph it was made for.
pub struct IcColoring {
    coloring: EdgeColoring,
    edge_count: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let msg = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: IcStatus, message: impl Into<String>) -> IcStatus {
    set_error(message);
    status
}

fn guard(f: impl FnOnce() -> IcStatus) -> IcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(IcStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, IcStatus> {
    if s.is_null() {
        return Err(fail(IcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(IcStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> IcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            IcStatus::Ok
        }
        Err(_) => fail(IcStatus::Panic, "string contains a NUL byte"),
    }
}

fn gadget_status(e: &GadgetError) -> IcStatus {
    match e {
        GadgetError::NotInSpectrum { .. } => IcStatus::NotInSpectrum,
        _ => IcStatus::InvalidArgument,
    }
}

fn budget(ms: u64) -> Budget {
    if ms == 0 {
        Budget::unlimited()
    } else {
        Budget::millis(ms)
    }
}

macro_rules! check_null {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            return fail(IcStatus::NullPointer, "null pointer argument");
        }
    };
}

/// Message for the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn ic_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses graph JSON (`{"vertices": [...], "edges": [[u, v], ...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_graph_from_json(json: *const c_char, out: *mut *mut IcGraph) -> IcStatus {
    guard(|| {
        check_null!(out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Graph::from_json_str(text) {
            Ok(graph) => {
                put(out, IcGraph { graph, boldf: None });
                IcStatus::Ok
            }
            Err(e) => fail(IcStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_graph_to_json(g: *const IcGraph, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        check_null!(g, out);
        put_string(out, (*g).graph.to_json_string())
    })
}

/// # Safety
/// `g` must be a graph handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ic_graph_free(g: *mut IcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn ic_graph_vertex_count(g: *const IcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// # Safety
/// `g` must be a live graph handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn ic_graph_edge_count(g: *const IcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Builds `F(b, T)`. If `coloring_out` is non-null it receives the explicit
/// coloring with `T + 1` colors.
///
/// # Safety
/// `graph_out` must be writable; `coloring_out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn ic_gadget_f(
    b: usize,
    top: usize,
    graph_out: *mut *mut IcGraph,
    coloring_out: *mut *mut IcColoring,
) -> IcStatus {
    guard(|| {
        check_null!(graph_out);
        let (graph, bp) = match build_f(b, top) {
            Ok(x) => x,
            Err(e) => return fail(gadget_status(&e), e.to_string()),
        };
        if !coloring_out.is_null() {
            match explicit_coloring_f(&graph, &bp) {
                Ok(c) => put(coloring_out, IcColoring { coloring: c, edge_count: graph.edge_count() }),
                Err(e) => return fail(gadget_status(&e), e.to_string()),
            }
        }
        put(graph_out, IcGraph { graph, boldf: None });
        IcStatus::Ok
    })
}

/// Builds the glued gadget with `k` gaps of size at least `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ic_gadget_boldf(k: usize, d: usize, out: *mut *mut IcGraph) -> IcStatus {
    guard(|| {
        check_null!(out);
        match build_boldf(k, d) {
            Ok((graph, bp)) => {
                put(out, IcGraph { graph, boldf: Some(bp) });
                IcStatus::Ok
            }
            Err(e) => fail(gadget_status(&e), e.to_string()),
        }
    })
}

/// Coloring with exactly `t` colors of a graph made by `ic_gadget_boldf`.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_realize_t(g: *const IcGraph, t: usize, out: *mut *mut IcColoring) -> IcStatus {
    guard(|| {
        check_null!(g, out);
        let g = &*g;
        let Some(bp) = &g.boldf else {
            return fail(IcStatus::WrongGraph, "graph was not built by ic_gadget_boldf");
        };
        match realize_t(&g.graph, bp, t) {
            Ok(r) => {
                put(out, IcColoring { coloring: r.coloring, edge_count: g.graph.edge_count() });
                IcStatus::Ok
            }
            Err(e) => fail(gadget_status(&e), e.to_string()),
        }
    })
}

/// Parses coloring JSON (`{"colors": {"u--v": 3, ...}}`) for graph `g`.
///
/// # Safety
/// `g` must be a live graph handle, `json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_coloring_from_json(g: *const IcGraph, json: *const c_char, out: *mut *mut IcColoring) -> IcStatus {
    guard(|| {
        check_null!(g, out);
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let graph = &(*g).graph;
        match EdgeColoring::from_json_str(graph, text) {
            Ok(c) => {
                put(out, IcColoring { coloring: c, edge_count: graph.edge_count() });
                IcStatus::Ok
            }
            Err(e) => fail(IcStatus::ParseError, e.to_string()),
        }
    })
}

fn matches(g: &IcGraph, c: &IcColoring) -> Result<(), IcStatus> {
    if g.graph.edge_count() != c.edge_count {
        return Err(fail(IcStatus::WrongGraph, "coloring belongs to a different graph"));
    }
    Ok(())
}

/// # Safety
/// `g` and `c` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_coloring_to_json(g: *const IcGraph, c: *const IcColoring, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        check_null!(g, c, out);
        if let Err(s) = matches(&*g, &*c) {
            return s;
        }
        put_string(out, (*c).coloring.to_json_string(&(*g).graph))
    })
}

/// # Safety
/// `c` must be a coloring handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn ic_coloring_free(c: *mut IcColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of distinct colors used.
///
/// # Safety
/// `c` must be a live coloring handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn ic_coloring_color_count(c: *const IcColoring) -> usize {
    c.as_ref().map_or(0, |c| c.coloring.palette().len())
}

/// Color of edge `e` (in the graph's sorted edge order), or 0 when out of
/// range.
///
/// # Safety
/// `c` must be a live coloring handle or null.
#[no_mangle]
pub unsafe extern "C" fn ic_coloring_get(c: *const IcColoring, e: usize) -> i64 {
    c.as_ref().and_then(|c| c.coloring.colors().get(e).copied()).unwrap_or(0)
}

/// `IC_STATUS_OK` if `c` is an interval coloring of `g`, `IC_STATUS_NONE`
/// if not.
///
/// # Safety
/// `g` and `c` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn ic_verify_interval(g: *const IcGraph, c: *const IcColoring) -> IcStatus {
    guard(|| {
        check_null!(g, c);
        if let Err(s) = matches(&*g, &*c) {
            return s;
        }
        match verify_interval(&(*g).graph, &(*c).coloring) {
            Ok(v) if v.is_empty() => IcStatus::Ok,
            Ok(v) => {
                set_error(v[0].describe(&(*g).graph));
                IcStatus::None
            }
            Err(e) => fail(IcStatus::WrongGraph, e.to_string()),
        }
    })
}

/// Searches for an interval coloring with exactly `t` colors within
/// `budget_ms` milliseconds (0 means no limit). Writes `out` only on
/// `IC_STATUS_OK`.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_find_coloring(g: *const IcGraph, t: usize, budget_ms: u64, out: *mut *mut IcColoring) -> IcStatus {
    guard(|| {
        check_null!(g, out);
        let graph = &(*g).graph;
        match find_coloring(graph, t, budget(budget_ms)) {
            Ok(Decision::Found(c)) => {
                put(out, IcColoring { coloring: c, edge_count: graph.edge_count() });
                IcStatus::Ok
            }
            Ok(Decision::NotColorable) => IcStatus::None,
            Ok(Decision::Timeout) => IcStatus::Timeout,
            Err(e) => fail(IcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Interval spectrum report as JSON. `t_max = 0` searches up to the edge
/// count. Returns `IC_STATUS_TIMEOUT` (with the partial report written) when
/// some values were left undecided.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ic_spectrum_json(g: *const IcGraph, t_max: usize, budget_ms: u64, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        check_null!(g, out);
        let graph = &(*g).graph;
        let t_hi = (t_max > 0).then_some(t_max);
        match compute_spectrum(graph, t_hi, budget(budget_ms)) {
            Ok(report) => {
                let json = serde_json::to_string(&report.to_json(graph)).expect("spectrum JSON");
                let status = put_string(out, json);
                if status == IcStatus::Ok && report.is_partial() {
                    IcStatus::Timeout
                } else {
                    status
                }
            }
            Err(e) => fail(IcStatus::InvalidArgument, e.to_string()),
        }
    })
}
