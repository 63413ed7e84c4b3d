//! C ABI over the walkgain toolkit.
//!
//! Conventions: every fallible function returns a [`WgStatus`] and writes
//! results through out-pointers. Handles ([`WgGraph`], [`WgScores`]) are
//! opaque and must be released with their matching `_free` function. On any
//! non-`Ok` status, `wg_last_error_message` returns a human-readable
//! description for the calling thread.
//!
//! The header is generated into `include/walkgain.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use walkgain::baselines;
use walkgain::error::Error;
use walkgain::gain::{self, SeriesConfig};
use walkgain::graph::Graph;
use walkgain::rank;
use walkgain::spectral;

/// Status codes; the numeric values of `Parse`, `Domain`, `NonConvergence`
/// and `ResourceCap` match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Domain = 3,
    NonConvergence = 4,
    ResourceCap = 5,
    InvalidUtf8 = 6,
    BufferTooSmall = 7,
}

/// Centrality selector for [`wg_centrality`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgMetric {
    Degree = 0,
    GeometricGain = 1,
    ExponentialGain = 2,
    Katz = 3,
    Eigenvector = 4,
    PageRank = 5,
    Communicability = 6,
}

/// Spectral radius estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WgSpectralEstimate {
    pub lambda1: f64,
    pub iterations: u64,
    pub residual: f64,
    pub converged: bool,
}

/// Opaque graph handle.
pub struct WgGraph {
    inner: Graph,
}

/// Opaque score-vector handle; values are indexed by internal node index.
pub struct WgScores {
    values: Vec<f64>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_from(err: &Error) -> WgStatus {
    set_last_error(&err.to_string());
    match err.exit_code() {
        2 => WgStatus::Parse,
        4 => WgStatus::NonConvergence,
        5 => WgStatus::ResourceCap,
        _ => WgStatus::Domain,
    }
}

fn null_argument(what: &str) -> WgStatus {
    set_last_error(&format!("null argument: {what}"));
    WgStatus::NullArgument
}

/// Copy the last error message for this thread into `buffer` (NUL
/// terminated, truncated to `capacity`). Returns the full length of the
/// message including the terminator, or 0 when no error is recorded;
/// call with a null buffer to query the required capacity.
///
/// # Safety
/// `buffer` must be null or point to at least `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wg_last_error_message(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if bytes.len() <= 1 {
            return 0;
        }
        if !buffer.is_null() && capacity > 0 {
            let n = capacity.min(bytes.len());
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buffer, n);
            // always terminate, even when truncating
            *buffer.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Static version string of the underlying library.
#[no_mangle]
pub extern "C" fn wg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Load an undirected graph from an edge-list file (KONECT or plain
/// two-column dialect). On success `*out_graph` owns the handle.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out_graph` must be a
/// valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_load_path(
    path: *const c_char,
    out_graph: *mut *mut WgGraph,
) -> WgStatus {
    if out_graph.is_null() {
        return null_argument("out_graph");
    }
    if path.is_null() {
        return null_argument("path");
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_last_error("path is not valid UTF-8");
        return WgStatus::InvalidUtf8;
    };
    match Graph::load_path(path) {
        Ok((graph, _summary)) => {
            *out_graph = Box::into_raw(Box::new(WgGraph { inner: graph }));
            WgStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Release a graph handle. Null is a no-op.
///
/// # Safety
/// `graph` must have come from `wg_graph_load_path` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_free(graph: *mut WgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of nodes; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_node_count(graph: *const WgGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.node_count() as u64)
}

/// Number of undirected edges; 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_edge_count(graph: *const WgGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.edge_count() as u64)
}

unsafe fn copy_string(
    text: &str,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> WgStatus {
    let needed = text.len() + 1;
    if !written.is_null() {
        *written = needed;
    }
    if buffer.is_null() || capacity < needed {
        set_last_error(&format!("buffer of {capacity} bytes, need {needed}"));
        return WgStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr() as *const c_char, buffer, text.len());
    *buffer.add(text.len()) = 0;
    WgStatus::Ok
}

/// Original label of the node at `index`, copied NUL-terminated into
/// `buffer`. `*written` receives the required capacity.
///
/// # Safety
/// Pointer arguments must be valid; `buffer` must hold `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_node_label(
    graph: *const WgGraph,
    index: u64,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> WgStatus {
    let Some(g) = graph.as_ref() else {
        return null_argument("graph");
    };
    if index >= g.inner.node_count() as u64 {
        set_last_error(&format!(
            "node index {index} out of range (n = {})",
            g.inner.node_count()
        ));
        return WgStatus::Domain;
    }
    copy_string(g.inner.label(index as usize), buffer, capacity, written)
}

/// Hex fingerprint binding outputs to this graph.
///
/// # Safety
/// Pointer arguments must be valid; `buffer` must hold `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn wg_graph_fingerprint(
    graph: *const WgGraph,
    buffer: *mut c_char,
    capacity: usize,
    written: *mut usize,
) -> WgStatus {
    let Some(g) = graph.as_ref() else {
        return null_argument("graph");
    };
    copy_string(g.inner.fingerprint(), buffer, capacity, written)
}

/// Power-iteration estimate of the spectral radius. Pass NaN for `tol` or 0
/// for `max_iters` to use the defaults (1e-10, 10000). Non-convergence is
/// reported in the estimate, not as an error.
///
/// # Safety
/// `graph` and `out_estimate` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wg_spectral_radius(
    graph: *const WgGraph,
    tol: f64,
    max_iters: u64,
    out_estimate: *mut WgSpectralEstimate,
) -> WgStatus {
    let Some(g) = graph.as_ref() else {
        return null_argument("graph");
    };
    if out_estimate.is_null() {
        return null_argument("out_estimate");
    }
    let tol = if tol.is_nan() { spectral::DEFAULT_TOL } else { tol };
    let max_iters = if max_iters == 0 {
        spectral::DEFAULT_MAX_ITERS
    } else {
        max_iters as usize
    };
    if tol.is_nan() || tol <= 0.0 {
        set_last_error("tol must be positive");
        return WgStatus::Domain;
    }
    let est = spectral::estimate_spectral_radius(&g.inner, tol, max_iters);
    *out_estimate = WgSpectralEstimate {
        lambda1: est.lambda1,
        iterations: est.iterations as u64,
        residual: est.residual,
        converged: est.converged,
    };
    WgStatus::Ok
}

/// Compute a centrality. Pass NaN for `delta`, `alpha` or `tol` and 0 for
/// `k_max` to use the metric's defaults (`delta` defaults to 1/(2λ₁)).
/// On success `*out_scores` owns the handle.
///
/// # Safety
/// `graph` and `out_scores` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wg_centrality(
    graph: *const WgGraph,
    metric: WgMetric,
    delta: f64,
    alpha: f64,
    tol: f64,
    k_max: u64,
    out_scores: *mut *mut WgScores,
) -> WgStatus {
    let Some(g) = graph.as_ref() else {
        return null_argument("graph");
    };
    if out_scores.is_null() {
        return null_argument("out_scores");
    }
    let g = &g.inner;
    let tol = if tol.is_nan() { gain::DEFAULT_SERIES_TOL } else { tol };
    let alpha = if alpha.is_nan() {
        baselines::DEFAULT_PAGERANK_ALPHA
    } else {
        alpha
    };
    let k_max = if k_max == 0 { None } else { Some(k_max as usize) };

    let needs_lambda = matches!(
        metric,
        WgMetric::GeometricGain | WgMetric::ExponentialGain | WgMetric::Katz | WgMetric::Communicability
    );
    let est = needs_lambda.then(|| {
        spectral::estimate_spectral_radius(g, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITERS)
    });
    let resolve_delta = |est: &spectral::SpectralEstimate| {
        if delta.is_nan() {
            gain::default_delta(est.lambda1)
        } else {
            delta
        }
    };

    let result = match metric {
        WgMetric::Degree => Ok(baselines::degree_centrality(g)),
        WgMetric::GeometricGain => {
            let est = est.as_ref().expect("estimate computed");
            let cfg = SeriesConfig {
                delta: resolve_delta(est),
                k_max: k_max.unwrap_or(gain::GEOMETRIC_K_MAX),
                tol,
                k_ref: 0,
            };
            gain::geometric_potential_gain(g, &cfg, est).map(|(s, _)| s)
        }
        WgMetric::ExponentialGain => {
            let est = est.as_ref().expect("estimate computed");
            let mut cfg = SeriesConfig::exponential(est.lambda1);
            cfg.tol = tol;
            if let Some(k) = k_max {
                cfg.k_max = k;
            }
            gain::exponential_potential_gain(g, &cfg, est).map(|(s, _)| s)
        }
        WgMetric::Katz => {
            let est = est.as_ref().expect("estimate computed");
            baselines::katz(
                g,
                resolve_delta(est),
                tol,
                k_max.unwrap_or(gain::GEOMETRIC_K_MAX),
                est,
            )
        }
        WgMetric::Communicability => {
            let est = est.as_ref().expect("estimate computed");
            baselines::communicability_centrality(
                g,
                tol,
                k_max.unwrap_or_else(|| gain::exponential_k_max(est.lambda1)),
                est,
            )
        }
        WgMetric::Eigenvector => {
            let r = baselines::eigenvector_centrality(g, tol, k_max.unwrap_or(100_000));
            if r.estimate.converged {
                Ok(r.scores)
            } else {
                Err(Error::NonConvergence {
                    iterations: r.estimate.iterations,
                })
            }
        }
        WgMetric::PageRank => {
            baselines::pagerank(g, alpha, tol, k_max.unwrap_or(10_000)).and_then(|r| {
                if r.converged {
                    Ok(r.scores)
                } else {
                    Err(Error::NonConvergence {
                        iterations: r.iterations,
                    })
                }
            })
        }
    };
    match result {
        Ok(scores) => {
            *out_scores = Box::into_raw(Box::new(WgScores {
                values: scores.values,
            }));
            WgStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Number of scores in the handle; 0 for null.
///
/// # Safety
/// `scores` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wg_scores_len(scores: *const WgScores) -> u64 {
    scores.as_ref().map_or(0, |s| s.values.len() as u64)
}

/// Copy all scores (node-index order) into `buffer`, which must hold
/// exactly `len == wg_scores_len(scores)` doubles.
///
/// # Safety
/// `scores` must be a live handle; `buffer` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn wg_scores_copy(
    scores: *const WgScores,
    buffer: *mut f64,
    len: usize,
) -> WgStatus {
    let Some(s) = scores.as_ref() else {
        return null_argument("scores");
    };
    if buffer.is_null() {
        return null_argument("buffer");
    }
    if len != s.values.len() {
        set_last_error(&format!(
            "buffer holds {len} doubles, scores hold {}",
            s.values.len()
        ));
        return WgStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(s.values.as_ptr(), buffer, len);
    WgStatus::Ok
}

/// Release a scores handle. Null is a no-op.
///
/// # Safety
/// `scores` must have come from `wg_centrality` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn wg_scores_free(scores: *mut WgScores) {
    if !scores.is_null() {
        drop(Box::from_raw(scores));
    }
}

/// Crossover delta for an eigenvalue: the δ at which the geometric and
/// exponential spectrum transforms coincide.
///
/// # Safety
/// Out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wg_crossover_delta(
    lambda: f64,
    out_delta: *mut f64,
    out_admissible: *mut bool,
) -> WgStatus {
    if out_delta.is_null() {
        return null_argument("out_delta");
    }
    match gain::crossover_delta(lambda) {
        Ok(point) => {
            *out_delta = point.delta_c;
            if !out_admissible.is_null() {
                *out_admissible = point.admissible;
            }
            WgStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}

/// Spearman rank correlation with fractional tie ranks over two arrays of
/// length `len`.
///
/// # Safety
/// `a` and `b` must point to `len` doubles; `out_rho` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wg_spearman_rho(
    a: *const f64,
    b: *const f64,
    len: usize,
    out_rho: *mut f64,
) -> WgStatus {
    if a.is_null() || b.is_null() {
        return null_argument("input array");
    }
    if out_rho.is_null() {
        return null_argument("out_rho");
    }
    let a = std::slice::from_raw_parts(a, len);
    let b = std::slice::from_raw_parts(b, len);
    match rank::spearman_rho_values(a, b) {
        Ok(rho) => {
            *out_rho = rho;
            WgStatus::Ok
        }
        Err(e) => status_from(&e),
    }
}
