//! C interface to `spantree`.
//!
//! Graphs are opaque `SpGraph` handles created by one of the `sp_graph_*`
//! constructors and released with [`sp_graph_free`]. Every fallible call
//! returns an [`SpStatus`]; on failure a message is available from
//! [`sp_last_error`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spantree::connectivity::edge_connectivity;
use spantree::families::{build_gd, build_hd};
use spantree::graph::Graph;
use spantree::report::analyze;
use spantree::spectra::{adjacency_spectrum, lambda2};
use spantree::treepack::{sigma, verify_certificate};
use spantree::Error;

/// Opaque graph handle.
pub struct SpGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    Construction = 5,
    BufferTooSmall = 6,
    Numerical = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(SpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => SpStatus::Parse,
            Error::Io(_) => SpStatus::Io,
            Error::SelfLoop(_)
            | Error::VertexOutOfRange { .. }
            | Error::DuplicateEdge(..)
            | Error::Construction(_) => SpStatus::Construction,
            Error::NoConvergence(_) | Error::NoRealRoot | Error::NotSymmetric(_) => {
                SpStatus::Numerical
            }
            _ => SpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: SpStatus, msg: &str) -> Result<T, Failure> {
    Err(Failure(status, msg.to_string()))
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            SpStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const SpGraph) -> Result<&'a Graph, Failure> {
    // SAFETY: caller passes a live handle or null.
    match unsafe { g.as_ref() } {
        Some(h) => Ok(&h.inner),
        None => fail(SpStatus::NullPointer, "graph handle is null"),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(SpStatus::NullPointer, "output pointer is null");
    }
    // SAFETY: non-null and, per the contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn emit_graph(out: *mut *mut SpGraph, g: Graph) -> Result<(), Failure> {
    let handle = Box::into_raw(Box::new(SpGraph { inner: g }));
    // SAFETY: forwarded from the caller's contract on `out`.
    unsafe { write_out(out, handle) }.inspect_err(|_| {
        // SAFETY: just allocated above and not shared.
        drop(unsafe { Box::from_raw(handle) });
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable `size_t` values (it may be
/// null when `edge_count` is 0) and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut SpGraph,
) -> SpStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return fail(SpStatus::NullPointer, "edge array is null");
        } else {
            let len = edge_count.checked_mul(2).ok_or(Failure(
                SpStatus::InvalidArgument,
                "edge count overflows".into(),
            ))?;
            // SAFETY: caller guarantees 2 * edge_count readable values.
            unsafe { std::slice::from_raw_parts(edges, len) }
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        let g = Graph::new(n, &pairs)?;
        // SAFETY: caller guarantees `out` is writable.
        unsafe { emit_graph(out, g) }
    })
}

/// Reads an edge-list file (`n m` header, then one `u v` per line).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_read(path: *const c_char, out: *mut *mut SpGraph) -> SpStatus {
    guard(|| {
        if path.is_null() {
            return fail(SpStatus::NullPointer, "path is null");
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let path = unsafe { CStr::from_ptr(path) }
            .to_str()
            .map_err(|_| Failure(SpStatus::InvalidArgument, "path is not UTF-8".into()))?;
        let g = Graph::read_edge_list(path)?;
        // SAFETY: caller guarantees `out` is writable.
        unsafe { emit_graph(out, g) }
    })
}

/// The three-block family with `σ = 1`, `d >= 4`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_build_gd(d: usize, out: *mut *mut SpGraph) -> SpStatus {
    // SAFETY: forwarded.
    guard(|| unsafe { emit_graph(out, build_gd(d)?) })
}

/// The five-block family with `σ = 2`, `d >= 6`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_build_hd(d: usize, out: *mut *mut SpGraph) -> SpStatus {
    // SAFETY: forwarded.
    guard(|| unsafe { emit_graph(out, build_hd(d)?) })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_free(g: *mut SpGraph) {
    if !g.is_null() {
        // SAFETY: caller guarantees ownership of a live handle.
        drop(unsafe { Box::from_raw(g) });
    }
}

/// # Safety
/// `g` must be a live handle; `n` and `m` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_graph_counts(
    g: *const SpGraph,
    n: *mut usize,
    m: *mut usize,
) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        write_out(n, g.vertex_count())?;
        write_out(m, g.edge_count())
    })
}

/// Second largest adjacency eigenvalue; needs at least two vertices.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_lambda2(g: *const SpGraph, out: *mut f64) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        write_out(out, lambda2(g)?)
    })
}

/// Maximum number of edge-disjoint spanning trees. The packing certificate
/// is checked before returning.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_sigma(g: *const SpGraph, out: *mut usize) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        let r = sigma(g);
        if let Err(defect) = verify_certificate(g, &r) {
            return fail(
                SpStatus::Numerical,
                &format!("certificate rejected: {defect}"),
            );
        }
        write_out(out, r.sigma)
    })
}

/// Edge connectivity; needs at least two vertices.
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_edge_connectivity(g: *const SpGraph, out: *mut usize) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        write_out(out, edge_connectivity(g)?.value)
    })
}

/// Adjacency eigenvalues in descending order. `*len` is always set to the
/// vertex count; if `capacity` is smaller nothing is copied and
/// `SP_STATUS_BUFFER_TOO_SMALL` is returned. `values` may be null when
/// `capacity` is 0.
///
/// # Safety
/// `values` must have room for `capacity` doubles and `len` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn sp_spectrum(
    g: *const SpGraph,
    values: *mut f64,
    capacity: usize,
    len: *mut usize,
) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        let n = g.vertex_count();
        write_out(len, n)?;
        if capacity < n {
            return fail(
                SpStatus::BufferTooSmall,
                &format!("need {n} slots, got {capacity}"),
            );
        }
        if n == 0 {
            return Ok(());
        }
        if values.is_null() {
            return fail(SpStatus::NullPointer, "value buffer is null");
        }
        let s = adjacency_spectrum(g)?;
        // SAFETY: capacity >= n slots per the contract.
        ptr::copy_nonoverlapping(s.values.as_ptr(), values, n);
        Ok(())
    })
}

/// Full analysis report as pretty JSON. Free the string with
/// [`sp_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn sp_analyze_json(g: *const SpGraph, out: *mut *mut c_char) -> SpStatus {
    guard(|| unsafe {
        // SAFETY: forwarded.
        let g = graph_ref(g)?;
        let (report, _) = analyze(g, "ffi")?;
        let text = serde_json::to_string_pretty(&report)
            .map_err(|e| Failure(SpStatus::Numerical, e.to_string()))?;
        let s =
            CString::new(text).map_err(|_| Failure(SpStatus::Numerical, "NUL in report".into()))?;
        let raw = s.into_raw();
        write_out(out, raw).inspect_err(|_| drop(CString::from_raw(raw)))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: caller guarantees `s` came from `CString::into_raw` here.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
