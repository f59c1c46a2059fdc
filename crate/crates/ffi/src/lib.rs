//! C ABI over `ucp-core`.
//!
//! Instances and solve results are opaque handles owned by the caller and
//! released with their `_free` function. Every call returns a [`UcpStatus`];
//! on failure [`ucp_last_error_message`] describes the error for the calling
//! thread. Exact values cross the boundary as `"num/den"` strings allocated
//! here and released with [`ucp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ucp_core::exact::{solve_ucp, SolveError, SolveResult};
use ucp_core::io::{InstanceDocument, JsonError};
use ucp_core::partition::Partition;
use ucp_core::reductions::{reduce_bisection, reduce_cliquecover, reduce_coloring, reduce_fdcs};
use ucp_core::{GraphInstance, UcpDecisionInstance};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    TooLarge = 5,
    Panic = 6,
}

/// Graph reductions reachable from C.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UcpGraphReduction {
    /// `param_a` colors; `param_b` unused.
    Coloring = 0,
    /// Subgraph size `param_a` with at least `param_b` edges.
    Fdcs = 1,
    /// Cut budget `param_a`; `param_b` unused.
    Bisection = 2,
    /// `param_a` cliques; `param_b` unused.
    CliqueCover = 3,
}

/// Opaque decision instance.
pub struct UcpInstance(UcpDecisionInstance);

/// Opaque exact-solver result.
pub struct UcpSolveResult(SolveResult);

struct Failure(UcpStatus, String);

impl Failure {
    fn null(what: &str) -> Self {
        Failure(UcpStatus::NullPointer, format!("{what} is null"))
    }

    fn invalid(e: impl std::fmt::Display) -> Self {
        Failure(UcpStatus::InvalidArgument, e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::InstanceTooLarge { .. } => UcpStatus::TooLarge,
            _ => UcpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        let status = match e {
            JsonError::Instance(_) => UcpStatus::InvalidArgument,
            _ => UcpStatus::ParseError,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> UcpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            UcpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            UcpStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::null(what))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul in generated text").into_raw()
}

/// Parses an instance document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ucp_instance_from_json(json: *const c_char, out: *mut *mut UcpInstance) -> UcpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        if json.is_null() {
            return Err(Failure::null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(UcpStatus::InvalidUtf8, e.to_string()))?;
        let inst = InstanceDocument::parse(text)?;
        *out = Box::into_raw(Box::new(UcpInstance(inst)));
        Ok(())
    })
}

/// Serializes an instance; release `*out` with [`ucp_string_free`].
///
/// # Safety
/// `inst` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_instance_to_json(inst: *const UcpInstance, out: *mut *mut c_char) -> UcpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let inst = borrow(inst, "instance")?;
        *out = to_c_string(InstanceDocument::to_json(&inst.0));
        Ok(())
    })
}

/// Number of points, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ucp_instance_n(inst: *const UcpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Number of blocks, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ucp_instance_k(inst: *const UcpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.k())
}

/// # Safety
/// `inst` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ucp_instance_free(inst: *mut UcpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Reduces a graph given as `num_edges` pairs of 0-based vertices in
/// `edges` (length `2 * num_edges`). `kind` is a [`UcpGraphReduction`] value.
///
/// # Safety
/// `edges` must hold `2 * num_edges` values (it may be null when
/// `num_edges` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_graph_reduce(
    kind: c_int,
    n: usize,
    edges: *const usize,
    num_edges: usize,
    param_a: usize,
    param_b: usize,
    out: *mut *mut UcpInstance,
) -> UcpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let flat: &[usize] = if num_edges == 0 {
            &[]
        } else if edges.is_null() {
            return Err(Failure::null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * num_edges)
        };
        let g = GraphInstance::new(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))).map_err(Failure::invalid)?;
        let reduced = match kind {
            k if k == UcpGraphReduction::Coloring as c_int => reduce_coloring(&g, param_a),
            k if k == UcpGraphReduction::Fdcs as c_int => reduce_fdcs(&g, param_a, param_b),
            k if k == UcpGraphReduction::Bisection as c_int => reduce_bisection(&g, param_a),
            k if k == UcpGraphReduction::CliqueCover as c_int => reduce_cliquecover(&g, param_a),
            other => return Err(Failure::invalid(format!("unknown graph reduction {other}"))),
        }
        .map_err(Failure::invalid)?;
        *out = Box::into_raw(Box::new(UcpInstance(reduced.instance)));
        Ok(())
    })
}

/// Utility of the partition given by `labels` (one per point); release
/// `*value` with [`ucp_string_free`].
///
/// # Safety
/// `labels` must hold `len` values and the pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_evaluate(
    inst: *const UcpInstance,
    labels: *const usize,
    len: usize,
    value: *mut *mut c_char,
) -> UcpStatus {
    guard(|| {
        let value = out_ptr(value, "value")?;
        *value = ptr::null_mut();
        let inst = borrow(inst, "instance")?;
        if labels.is_null() {
            return Err(Failure::null("labels"));
        }
        let labels = std::slice::from_raw_parts(labels, len);
        let p = Partition::canonicalize(labels).map_err(Failure::invalid)?;
        let v = inst.0.evaluate(&p).map_err(Failure::invalid)?;
        *value = to_c_string(v.to_string());
        Ok(())
    })
}

/// Enumerates every partition; `*out` owns the result.
///
/// # Safety
/// `inst` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_solve_exact(inst: *const UcpInstance, out: *mut *mut UcpSolveResult) -> UcpStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = ptr::null_mut();
        let inst = borrow(inst, "instance")?;
        *out = Box::into_raw(Box::new(UcpSolveResult(solve_ucp(&inst.0)?)));
        Ok(())
    })
}

/// Sets `*yes` to 1 when the optimum reaches the threshold, else 0.
///
/// # Safety
/// `inst` must come from this library and `yes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_decide(inst: *const UcpInstance, yes: *mut c_int) -> UcpStatus {
    guard(|| {
        let yes = out_ptr(yes, "yes")?;
        let inst = borrow(inst, "instance")?;
        let result = solve_ucp(&inst.0)?;
        *yes = c_int::from(&result.optimum >= inst.0.threshold());
        Ok(())
    })
}

/// Optimum value; release `*value` with [`ucp_string_free`].
///
/// # Safety
/// `result` must come from this library and `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ucp_result_optimum(result: *const UcpSolveResult, value: *mut *mut c_char) -> UcpStatus {
    guard(|| {
        let value = out_ptr(value, "value")?;
        *value = ptr::null_mut();
        *value = to_c_string(borrow(result, "result")?.0.optimum.to_string());
        Ok(())
    })
}

/// Copies the optimal block labels into `labels`, which must hold `len`
/// entries with `len` equal to the number of points.
///
/// # Safety
/// `result` must come from this library and `labels` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn ucp_result_argmax(result: *const UcpSolveResult, labels: *mut usize, len: usize) -> UcpStatus {
    guard(|| {
        let result = borrow(result, "result")?;
        let argmax = result.0.argmax.labels();
        if len != argmax.len() {
            return Err(Failure::invalid(format!("buffer holds {len} labels, partition has {}", argmax.len())));
        }
        if labels.is_null() {
            return Err(Failure::null("labels"));
        }
        std::slice::from_raw_parts_mut(labels, len).copy_from_slice(argmax);
        Ok(())
    })
}

/// Number of partitions scored, saturating at `UINT64_MAX`; 0 for null.
///
/// # Safety
/// `result` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn ucp_result_evaluations(result: *const UcpSolveResult) -> u64 {
    result.as_ref().map_or(0, |r| u64::try_from(r.0.evaluations).unwrap_or(u64::MAX))
}

/// # Safety
/// `result` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ucp_result_free(result: *mut UcpSolveResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Message for the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ucp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ucp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
