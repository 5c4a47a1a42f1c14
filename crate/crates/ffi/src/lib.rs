//! C interface to the `tfsr` library.
//!
//! Objects are opaque handles created by `tfsr_*_new`/`tfsr_*_from_*` calls
//! and released by the matching `*_free`. Every fallible call returns a
//! [`TfsrStatus`]; on failure a message is available from
//! [`tfsr_last_error`] on the same thread. Strings handed out through
//! `char **` parameters belong to the caller and are released with
//! [`tfsr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tfsr::bounds::{self, BoundValue};
use tfsr::cli::CliError;
use tfsr::exactmath::{parse_rational, Rational};
use tfsr::flagcalc::{case_analysis, identity_suite};
use tfsr::graphcore::io::{parse_graph6, to_graph6};
use tfsr::graphcore::{catalog, WeightedGraph};
use tfsr::regweights::{optimize_a, LpStatus};
use tfsr::search::{run_search, SearchConfig, SearchResult};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfsrStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    DomainError = 3,
    NullPointer = 4,
    IndexOutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfsrSuite {
    Identities = 0,
    Cases = 1,
    All = 2,
}

/// A weighted triangle-free graph.
pub struct TfsrGraph(WeightedGraph);

/// The bound on `a` at one density.
pub struct TfsrBound(BoundValue);

/// Survivors of a search, one results-file line each.
pub struct TfsrSearchResults(Vec<SearchResult>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(TfsrStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e.exit_code() {
            1 => TfsrStatus::VerificationFailed,
            3 => TfsrStatus::DomainError,
            _ => TfsrStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: TfsrStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TfsrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TfsrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TfsrStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(TfsrStatus::NullPointer, format!("{what} is null"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TfsrStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(TfsrStatus::NullPointer, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return fail(TfsrStatus::NullPointer, "output pointer is null");
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(TfsrStatus::Panic, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn rational(s: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| Failure(TfsrStatus::InvalidInput, format!("{what}: {e}")))
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tfsr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn tfsr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one graph6 line into a uniformly weighted graph.
///
/// # Safety
/// `graph6` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_from_graph6(graph6: *const c_char, out: *mut *mut TfsrGraph) -> TfsrStatus {
    guard(|| {
        let g = parse_graph6(text(graph6, "graph6")?.trim()).map_err(CliError::from)?;
        put(out, Box::into_raw(Box::new(TfsrGraph(g))))
    })
}

/// Builds a catalog graph such as `petersen`, `clebsch` or `kneser-3`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_from_catalog(name: *const c_char, out: *mut *mut TfsrGraph) -> TfsrStatus {
    guard(|| {
        let g = catalog::by_name(text(name, "name")?).map_err(CliError::from)?;
        put(out, Box::into_raw(Box::new(TfsrGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_free(g: *mut TfsrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Replaces the vertex weights with comma-separated rationals summing to 1.
///
/// # Safety
/// `g` must be a live handle and `weights` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_set_weights(g: *mut TfsrGraph, weights: *const c_char) -> TfsrStatus {
    guard(|| {
        let w: Vec<Rational> = text(weights, "weights")?
            .split(',')
            .map(|x| rational(x, "weights"))
            .collect::<Result<_, _>>()?;
        let Some(g) = g.as_mut() else {
            return fail(TfsrStatus::NullPointer, "graph is null");
        };
        g.0 = g.0.clone().with_weights(w).map_err(CliError::from)?;
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_vertex_count(g: *const TfsrGraph, out: *mut usize) -> TfsrStatus {
    guard(|| put(out, handle(g, "graph")?.0.n()))
}

/// Edge density as `p/q`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_rho(g: *const TfsrGraph, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| put_string(out, handle(g, "graph")?.0.rho().to_string()))
}

/// Minimum common-neighbourhood measure over non-adjacent pairs, as `p/q`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_a_value(g: *const TfsrGraph, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| {
        let a = handle(g, "graph")?.0.a_value().map_err(CliError::from)?;
        put_string(out, a.to_string())
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_graph_to_graph6(g: *const TfsrGraph, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| put_string(out, to_graph6(&handle(g, "graph")?.0)))
}

/// Evaluates the bound at `rho` (a decimal or `p/q` in `[0, 1/2)`).
///
/// # Safety
/// `rho` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_bound_eval(rho: *const c_char, out: *mut *mut TfsrBound) -> TfsrStatus {
    guard(|| {
        let r = rational(text(rho, "rho")?, "rho")?;
        let b = bounds::bound(&r).map_err(CliError::from)?;
        put(out, Box::into_raw(Box::new(TfsrBound(b))))
    })
}

/// # Safety
/// `b` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tfsr_bound_free(b: *mut TfsrBound) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Label of the active piece, e.g. `Krein` or `rho/3|2rho-1/2`.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_bound_piece(b: *const TfsrBound, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| put_string(out, handle(b, "bound")?.0.piece_label()))
}

/// `value=p/q (exact)` or `value=[lo,hi]` with `hi - lo <= width`.
///
/// # Safety
/// `b` must be a live handle, `width` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_bound_describe(
    b: *const TfsrBound,
    width: *const c_char,
    out: *mut *mut c_char,
) -> TfsrStatus {
    guard(|| {
        let w = rational(text(width, "width")?, "width")?;
        if w <= Rational::from_integer(0.into()) {
            return fail(TfsrStatus::InvalidInput, "width must be positive");
        }
        put_string(out, handle(b, "bound")?.0.describe(&w))
    })
}

/// Exact rational value as `p/q`, or `DomainError` when the value is
/// irrational.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_bound_exact(b: *const TfsrBound, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| {
        let b = handle(b, "bound")?;
        let exact = b.0.value.refine(&Rational::new(1.into(), (1u64 << 40).into()));
        match exact.as_rational() {
            Some(r) => put_string(out, r.to_string()),
            None => fail(TfsrStatus::DomainError, "bound value is irrational"),
        }
    })
}

/// Optimal regular weights as `status=`, `rho_G=`, `a*=`, `weights=` lines.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_optimize_weights(g: *const TfsrGraph, out: *mut *mut c_char) -> TfsrStatus {
    guard(|| {
        let r = optimize_a(&handle(g, "graph")?.0);
        let report = r.to_string();
        let status = r.status;
        put_string(out, report)?;
        if status == LpStatus::Optimal {
            Ok(())
        } else {
            fail(TfsrStatus::DomainError, format!("linear program status {status}"))
        }
    })
}

/// Runs the flag identities and/or the case analysis at every minimizing
/// pair; `*passed` is set even when a check fails.
///
/// # Safety
/// `g` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_verify(g: *const TfsrGraph, suite: TfsrSuite, passed: *mut bool) -> TfsrStatus {
    guard(|| {
        let g = &handle(g, "graph")?.0;
        let mut ok = true;
        if suite != TfsrSuite::Cases {
            ok &= identity_suite(g).map_err(CliError::from)?.all_hold();
        }
        if suite != TfsrSuite::Identities {
            for (v1, v2) in g.minimizing_pairs().map_err(CliError::from)? {
                ok &= case_analysis(g, v1, v2).map_err(CliError::from)?.consistent();
            }
        }
        put(passed, ok)
    })
}

/// Runs a search from config text (`key = value` lines).
///
/// # Safety
/// `config` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_search(config: *const c_char, out: *mut *mut TfsrSearchResults) -> TfsrStatus {
    guard(|| {
        let cfg: SearchConfig = text(config, "config")?.parse().map_err(CliError::from)?;
        let res = run_search(&cfg).map_err(CliError::from)?;
        put(out, Box::into_raw(Box::new(TfsrSearchResults(res))))
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_search_results_len(r: *const TfsrSearchResults, out: *mut usize) -> TfsrStatus {
    guard(|| put(out, handle(r, "results")?.0.len()))
}

/// Result `index` as `graph6 TAB rho TAB a TAB weights`.
///
/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tfsr_search_results_line(
    r: *const TfsrSearchResults,
    index: usize,
    out: *mut *mut c_char,
) -> TfsrStatus {
    guard(|| {
        let r = handle(r, "results")?;
        match r.0.get(index) {
            Some(x) => put_string(out, x.to_string()),
            None => fail(
                TfsrStatus::IndexOutOfRange,
                format!("index {index} out of range for {} results", r.0.len()),
            ),
        }
    })
}

/// # Safety
/// `r` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tfsr_search_results_free(r: *mut TfsrSearchResults) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
