//! C ABI for the tpair toolkit.
//!
//! Handles are opaque pointers created and freed by this library. All
//! functions returning `TpairStatus` use `Ok` (0) for success; solver entry
//! points additionally use `NotRealizable` / `Exhausted` as non-error
//! outcomes. Strings returned by `*_json` functions are NUL-terminated,
//! UTF-8, and must be released with `tpair_string_free`.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use tpair::graph::{verify_realization, DemandGraph, HostGraph, PathSystem};
use tpair::solver::{decide_realizable, SolveConfig, SolveStatus};

pub struct TpairHost(HostGraph);
pub struct TpairDemand(DemandGraph);
pub struct TpairPaths(PathSystem);

/// Result codes. Non-negative values are outcomes, negative values errors.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TpairStatus {
    Ok = 0,
    NotRealizable = 1,
    Exhausted = 2,
    /// A pointer argument was NULL or a size argument out of range.
    ErrInvalidArgument = -1,
    /// Text input could not be parsed.
    ErrParse = -2,
    /// Demand and host vertex counts differ.
    ErrDimensionMismatch = -3,
    /// Family precondition violated (parity / divisibility).
    ErrFamily = -4,
    /// Internal error; should not happen.
    ErrInternal = -5,
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> TpairStatus {
    if out.is_null() {
        return TpairStatus::ErrInvalidArgument;
    }
    *out = Box::into_raw(Box::new(value));
    TpairStatus::Ok
}

/// Create a complete host graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer to a `TpairHost*` slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_host_complete(n: u32, out: *mut *mut TpairHost) -> TpairStatus {
    write_handle(out, TpairHost(HostGraph::complete(n as usize)))
}

/// Create a complete bipartite host graph with sides `a` and `b`.
///
/// # Safety
/// `out` must be a valid pointer to a `TpairHost*` slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_host_bipartite(
    a: u32,
    b: u32,
    out: *mut *mut TpairHost,
) -> TpairStatus {
    write_handle(out, TpairHost(HostGraph::complete_bipartite(a as usize, b as usize)))
}

/// Parse a host from the text format (`complete n` | `bipartite a b` |
/// `explicit n` plus edge lines).
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_host_parse(
    text: *const c_char,
    out: *mut *mut TpairHost,
) -> TpairStatus {
    if text.is_null() {
        return TpairStatus::ErrInvalidArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return TpairStatus::ErrParse;
    };
    match tpair::io::parse_host(text) {
        Ok(host) => write_handle(out, TpairHost(host)),
        Err(_) => TpairStatus::ErrParse,
    }
}

/// # Safety
/// `host` must come from a `tpair_host_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tpair_host_free(host: *mut TpairHost) {
    if !host.is_null() {
        drop(Box::from_raw(host));
    }
}

/// Parse a demand multigraph from the `.dem` text format.
///
/// # Safety
/// `text` must be a NUL-terminated UTF-8 string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_parse(
    text: *const c_char,
    out: *mut *mut TpairDemand,
) -> TpairStatus {
    if text.is_null() {
        return TpairStatus::ErrInvalidArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return TpairStatus::ErrParse;
    };
    match tpair::io::parse_demand(text) {
        Ok(d) => write_handle(out, TpairDemand(d)),
        Err(_) => TpairStatus::ErrParse,
    }
}

/// Triangle demand family: multiplicity-q/2 triangles on vertex triples.
/// Requires 3 | n and even q.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_triangle(
    n: u32,
    q: u32,
    out: *mut *mut TpairDemand,
) -> TpairStatus {
    match tpair::constructions::triangle_demand(n as usize, q) {
        Ok(d) => write_handle(out, TpairDemand(d)),
        Err(_) => TpairStatus::ErrFamily,
    }
}

/// One-factor demand family: a perfect matching with multiplicity q.
/// Requires even n.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_one_factor(
    n: u32,
    q: u32,
    out: *mut *mut TpairDemand,
) -> TpairStatus {
    match tpair::constructions::one_factor_demand(n as usize, q) {
        Ok(d) => write_handle(out, TpairDemand(d)),
        Err(_) => TpairStatus::ErrFamily,
    }
}

/// Bipartite one-factor family on vertex set 0..2n: the identity matching
/// with multiplicity n/3. Requires 3 | n.
///
/// # Safety
/// `out` must be a valid slot.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_bipartite_one_factor(
    n: u32,
    out: *mut *mut TpairDemand,
) -> TpairStatus {
    match tpair::constructions::bipartite_one_factor_demand(n as usize) {
        Ok(d) => write_handle(out, TpairDemand(d)),
        Err(_) => TpairStatus::ErrFamily,
    }
}

/// # Safety
/// `demand` must come from a `tpair_demand_*` constructor, freed once.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_free(demand: *mut TpairDemand) {
    if !demand.is_null() {
        drop(Box::from_raw(demand));
    }
}

/// Multiplicity-weighted maximum degree Δ(D); negative on NULL.
///
/// # Safety
/// `demand` must be a live demand handle.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_max_degree(demand: *const TpairDemand) -> i64 {
    match demand.as_ref() {
        Some(d) => d.0.max_degree() as i64,
        None => -1,
    }
}

/// Total number of demand edge instances e(D); negative on NULL.
///
/// # Safety
/// `demand` must be a live demand handle.
#[no_mangle]
pub unsafe extern "C" fn tpair_demand_edge_total(demand: *const TpairDemand) -> i64 {
    match demand.as_ref() {
        Some(d) => d.0.edge_total() as i64,
        None => -1,
    }
}

/// Decide realizability. `max_path_len` 0 means the full n−1 cap,
/// `node_budget` 0 the default budget. On a realizable outcome and a
/// non-NULL `out_paths`, a certificate handle is stored there.
/// `out_nodes`, when non-NULL, receives the explored node count.
///
/// # Safety
/// `host` and `demand` must be live handles; out pointers valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn tpair_solve(
    host: *const TpairHost,
    demand: *const TpairDemand,
    max_path_len: u32,
    node_budget: u64,
    out_paths: *mut *mut TpairPaths,
    out_nodes: *mut u64,
) -> TpairStatus {
    let (Some(host), Some(demand)) = (host.as_ref(), demand.as_ref()) else {
        return TpairStatus::ErrInvalidArgument;
    };
    let cfg = SolveConfig {
        max_path_len: (max_path_len > 0).then_some(max_path_len as usize),
        node_budget: if node_budget > 0 {
            node_budget
        } else {
            tpair::solver::DEFAULT_NODE_BUDGET
        },
        ..SolveConfig::default()
    };
    let outcome = match decide_realizable(&host.0, &demand.0, &cfg) {
        Ok(outcome) => outcome,
        Err(tpair::Error::DimensionMismatch { .. }) => return TpairStatus::ErrDimensionMismatch,
        Err(_) => return TpairStatus::ErrInternal,
    };
    if !out_nodes.is_null() {
        *out_nodes = outcome.nodes_explored;
    }
    match outcome.status {
        SolveStatus::Realizable(paths) => {
            if !out_paths.is_null() {
                *out_paths = Box::into_raw(Box::new(TpairPaths(paths)));
            }
            TpairStatus::Ok
        }
        SolveStatus::NotRealizable { .. } => TpairStatus::NotRealizable,
        SolveStatus::Exhausted => TpairStatus::Exhausted,
    }
}

/// # Safety
/// `paths` must come from `tpair_solve`, freed once.
#[no_mangle]
pub unsafe extern "C" fn tpair_paths_free(paths: *mut TpairPaths) {
    if !paths.is_null() {
        drop(Box::from_raw(paths));
    }
}

/// Check a path system against host and demand. Returns `Ok` when valid,
/// `NotRealizable` when the verifier reports violations.
///
/// # Safety
/// All handles must be live.
#[no_mangle]
pub unsafe extern "C" fn tpair_verify(
    host: *const TpairHost,
    demand: *const TpairDemand,
    paths: *const TpairPaths,
) -> TpairStatus {
    let (Some(host), Some(demand), Some(paths)) = (host.as_ref(), demand.as_ref(), paths.as_ref())
    else {
        return TpairStatus::ErrInvalidArgument;
    };
    if verify_realization(&host.0, &demand.0, &paths.0).valid {
        TpairStatus::Ok
    } else {
        TpairStatus::NotRealizable
    }
}

fn into_c_string(s: String) -> *mut c_char {
    match CString::new(s) {
        Ok(c) => c.into_raw(),
        Err(_) => ptr::null_mut(),
    }
}

/// Serialize a certificate to the PathSystem JSON format. NULL on error.
///
/// # Safety
/// `demand` and `paths` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn tpair_paths_to_json(
    demand: *const TpairDemand,
    paths: *const TpairPaths,
) -> *mut c_char {
    let (Some(demand), Some(paths)) = (demand.as_ref(), paths.as_ref()) else {
        return ptr::null_mut();
    };
    match tpair::io::paths_to_json(&demand.0, &paths.0) {
        Ok(json) => into_c_string(json),
        Err(_) => ptr::null_mut(),
    }
}

/// Counting-bound report for the triangle family as JSON. NULL when the
/// (n, q) preconditions fail.
#[no_mangle]
pub extern "C" fn tpair_bounds_json(n: u32, q: u32) -> *mut c_char {
    match tpair::bounds::bounds_report(n as usize, q as usize) {
        Ok(report) => match serde_json_string(&report) {
            Some(json) => into_c_string(json),
            None => ptr::null_mut(),
        },
        Err(_) => ptr::null_mut(),
    }
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> Option<String> {
    serde_json::to_string_pretty(value).ok()
}

/// # Safety
/// `s` must be a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn tpair_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
