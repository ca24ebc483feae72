//! C ABI for the koornwinder library.
//!
//! The surface is deliberately narrow: an opaque context handle built from
//! the same JSON parameter document the CLI consumes, a handful of entry
//! points that hand results back as JSON strings, and a status code per
//! call.  Rational numbers never cross the boundary as native types — every
//! value travels as a string, which keeps the ABI stable and exact.
//!
//! Conventions:
//! - Every string returned through an `out_json` parameter is heap-allocated
//!   and must be released with `kw_string_free`.
//! - On any status other than `Ok`, a human-readable message is
//!   available from `kw_last_error_message` on the same thread.
//! - All entry points are panic-safe: a panic in the library is caught and
//!   reported as a caught-panic status instead of unwinding across the ABI.

use koornwinder::config::Config;
use koornwinder::epoly::{compute_e, koornwinder_oracle, EpolyError};
use koornwinder::operators::{torus_constraints, RepContext};
use koornwinder::scalars::{
    fmt_rat, is_integer, parse_vector, rational_floor, ParamSpec, Rat, TorusPoint,
};
use koornwinder::verify::run_all;
use koornwinder::weyl::{length, lower_set, min_alcove_rep, orbit_of, reduced_word};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KwStatus {
    /// The call succeeded.
    Ok = 0,
    /// The computation ran but a mathematical check failed (non-generic
    /// parameters, a failed verification, an oracle mismatch).
    MathFail = 1,
    /// The input could not be used: malformed JSON, a coordinate vector of
    /// the wrong arity, parameters that violate a constraint.
    InvalidInput = 2,
    /// A required pointer argument was null.
    NullPointer = 3,
    /// A panic inside the library was caught at the boundary.
    Panic = 4,
}

/// Opaque handle holding validated parameters; create with
/// `kw_context_new`, release with `kw_context_free`.
pub struct KwContext {
    config: Config,
    params: ParamSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).expect("interior NULs removed");
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

/// Runs `body` with panics converted to `KwStatus::Panic`.
fn guarded(body: impl FnOnce() -> KwStatus) -> KwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic with non-string payload".to_string());
            set_error(&format!("internal panic: {}", msg));
            KwStatus::Panic
        }
    }
}

/// Borrows a required C string argument.
///
/// # Safety
/// `ptr` must be null or point at a NUL-terminated string.
unsafe fn required_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, KwStatus> {
    if ptr.is_null() {
        set_error(&format!("{} must not be null", what));
        return Err(KwStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{} is not valid UTF-8", what));
        KwStatus::InvalidInput
    })
}

/// Hands a Rust string to the caller through `out_json`.
///
/// # Safety
/// `out` must be null or a valid destination for one pointer write.
unsafe fn emit(out: *mut *mut c_char, body: String) -> KwStatus {
    if out.is_null() {
        set_error("out_json must not be null");
        return KwStatus::NullPointer;
    }
    let cleaned = body.replace('\0', " ");
    *out = CString::new(cleaned)
        .expect("interior NULs removed")
        .into_raw();
    KwStatus::Ok
}

fn invalid(msg: impl std::fmt::Display) -> KwStatus {
    set_error(&msg.to_string());
    KwStatus::InvalidInput
}

fn math_fail(msg: impl std::fmt::Display) -> KwStatus {
    set_error(&msg.to_string());
    KwStatus::MathFail
}

/// Returns the library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the message for the most recent failure on this thread, or an
/// empty string after a success.  The pointer stays valid until the next
/// call into the library on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn kw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a context from a JSON parameter document (same schema as the CLI
/// config file: rank, sqrt_q, k0, u0, k, kr, ur as rational strings, plus
/// optional t and seed).  Returns null on failure; see
/// `kw_last_error_message`.
///
/// # Safety
/// `config_json` must be null or point at a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn kw_context_new(config_json: *const c_char) -> *mut KwContext {
    let mut built: *mut KwContext = std::ptr::null_mut();
    let status = guarded(|| {
        let text = match required_str(config_json, "config_json") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let config: Config = match serde_json::from_str(text) {
            Ok(c) => c,
            Err(e) => return invalid(format!("cannot parse config: {}", e)),
        };
        let params = match config.params() {
            Ok(p) => p,
            Err(e) => return invalid(e),
        };
        built = Box::into_raw(Box::new(KwContext { config, params }));
        KwStatus::Ok
    });
    if status == KwStatus::Ok {
        built
    } else {
        std::ptr::null_mut()
    }
}

/// Releases a context created by `kw_context_new`.  Accepts null.
///
/// # Safety
/// `ctx` must be null or a pointer previously returned by
/// `kw_context_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn kw_context_free(ctx: *mut KwContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Returns the rank the context was built with, or 0 for a null context.
///
/// # Safety
/// `ctx` must be null or a live pointer from `kw_context_new`.
#[no_mangle]
pub unsafe extern "C" fn kw_context_rank(ctx: *const KwContext) -> usize {
    if ctx.is_null() {
        0
    } else {
        (*ctx).params.rank
    }
}

/// # Safety
/// See the exported callers; `ctx` must be a live context pointer.
unsafe fn required_ctx<'a>(ctx: *const KwContext) -> Result<&'a KwContext, KwStatus> {
    if ctx.is_null() {
        set_error("ctx must not be null");
        Err(KwStatus::NullPointer)
    } else {
        Ok(&*ctx)
    }
}

/// Describes the orbit of a point: basepoint, facet, minimal representative
/// word, lower set size, and torus constraints, as a JSON object.
///
/// # Safety
/// `ctx` must be a live context pointer, `point` a NUL-terminated string of
/// comma-separated rationals, and `out_json` a valid destination for one
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn kw_orbit_json(
    ctx: *const KwContext,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> KwStatus {
    guarded(|| {
        let ctx = match required_ctx(ctx) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let text = match required_str(point, "point") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let y = match parse_vector(text, ctx.params.rank) {
            Ok(v) => v,
            Err(e) => return invalid(e),
        };
        let orbit = orbit_of(&y);
        let (gy, _) = min_alcove_rep(&y);
        let doc = serde_json::json!({
            "basepoint": orbit.basepoint.iter().map(fmt_rat).collect::<Vec<_>>(),
            "facet": orbit.facet,
            "interior_facet": orbit.interior_facet(),
            "word": reduced_word(&gy),
            "length": length(&gy),
            "lower_set_size": lower_set(&y).len(),
            "torus_constraints": torus_constraints(&orbit),
        });
        emit(
            out_json,
            serde_json::to_string_pretty(&doc).expect("valid json"),
        )
    })
}

/// Computes the monic joint eigenfunction for a degree and returns it as a
/// JSON object (degree, orbit basepoint, facet, eigenvalues, terms).
///
/// # Safety
/// Same contract as `kw_orbit_json`.
#[no_mangle]
pub unsafe extern "C" fn kw_epoly_json(
    ctx: *const KwContext,
    point: *const c_char,
    out_json: *mut *mut c_char,
) -> KwStatus {
    guarded(|| {
        let ctx = match required_ctx(ctx) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let text = match required_str(point, "point") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let y = match parse_vector(text, ctx.params.rank) {
            Ok(v) => v,
            Err(e) => return invalid(e),
        };
        let rep = match ctx.config.context_for(&y) {
            Ok(c) => c,
            Err(e) => return invalid(e),
        };
        let e = match compute_e(&rep, &y) {
            Ok(e) => e,
            Err(err) => return math_fail(err),
        };
        emit(out_json, e.to_json())
    })
}

/// Tabulates a nonsymmetric Koornwinder polynomial (integer orbit, t = 1)
/// as JSON.  With `check_oracle` true — rank 1 only — the result is also
/// compared against the independent reference computation; a mismatch
/// yields the math-failure status with the JSON still written, and the
/// object carries an `oracle_match` field.
///
/// # Safety
/// Same contract as `kw_orbit_json`, with `degree` a comma-separated
/// integer vector.
#[no_mangle]
pub unsafe extern "C" fn kw_koornwinder_json(
    ctx: *const KwContext,
    degree: *const c_char,
    check_oracle: bool,
    out_json: *mut *mut c_char,
) -> KwStatus {
    guarded(|| {
        let ctx = match required_ctx(ctx) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let text = match required_str(degree, "degree") {
            Ok(t) => t,
            Err(status) => return status,
        };
        let mu = match parse_vector(text, ctx.params.rank) {
            Ok(v) => v,
            Err(e) => return invalid(e),
        };
        if !mu.iter().all(is_integer) {
            return invalid("the degree must be an integer vector");
        }
        if check_oracle && ctx.params.rank != 1 {
            return invalid("the oracle cross-check is rank-1 only");
        }
        let zero = vec![Rat::from_integer(0.into()); ctx.params.rank];
        let rep = RepContext::new(
            ctx.params.clone(),
            orbit_of(&zero),
            TorusPoint::one(ctx.params.rank),
        )
        .expect("t = 1 satisfies the integer-orbit constraints");
        let e = match compute_e(&rep, &mu) {
            Ok(e) => e,
            Err(err) => return math_fail(err),
        };
        let oracle_match = if check_oracle {
            let m = i64::try_from(rational_floor(&mu[0])).expect("degree fits in machine integers");
            match koornwinder_oracle(&ctx.params, m, m.abs()) {
                Ok(reference) => Some(reference == e.poly),
                Err(EpolyError::NonGenericParameters(msg)) => {
                    return math_fail(format!("oracle genericity failure: {}", msg));
                }
                Err(err) => return math_fail(err),
            }
        } else {
            None
        };
        let mut doc = serde_json::to_value(e.to_dto()).expect("valid json");
        if let Some(m) = oracle_match {
            doc.as_object_mut()
                .expect("dto serializes to an object")
                .insert("oracle_match".to_string(), serde_json::Value::Bool(m));
        }
        let status = emit(
            out_json,
            serde_json::to_string_pretty(&doc).expect("valid json"),
        );
        if status == KwStatus::Ok && oracle_match == Some(false) {
            return math_fail("oracle mismatch: see the oracle_match field");
        }
        status
    })
}

/// Runs the seeded randomized relation suite and reports it as JSON
/// (`rank`, `seed`, `passed`, and a `checks` array).  A `seed` of 0 falls
/// back to the seed in the config document, if any.  The JSON is written
/// whenever the suite ran; the status reports a math failure if any check
/// failed.
///
/// # Safety
/// `ctx` must be a live context pointer and `out_json` a valid destination
/// for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn kw_verify_json(
    ctx: *const KwContext,
    trials: usize,
    seed: u64,
    out_json: *mut *mut c_char,
) -> KwStatus {
    guarded(|| {
        let ctx = match required_ctx(ctx) {
            Ok(c) => c,
            Err(status) => return status,
        };
        let seed = if seed != 0 {
            seed
        } else {
            ctx.config.seed.unwrap_or(0)
        };
        let reports = run_all(&ctx.params, seed, trials);
        let all_passed = reports.iter().all(|r| r.passed());
        let items: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "name": r.name,
                    "trials": r.trials,
                    "passed": r.passed(),
                    "failures": r.failures,
                    "note": r.note,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "rank": ctx.params.rank,
            "seed": seed,
            "passed": all_passed,
            "checks": items,
        });
        let status = emit(
            out_json,
            serde_json::to_string_pretty(&doc).expect("valid json"),
        );
        if status == KwStatus::Ok && !all_passed {
            return math_fail("relation suite reported failures: see the checks array");
        }
        status
    })
}

/// Releases a string returned through an `out_json` parameter.  Accepts
/// null.
///
/// # Safety
/// `s` must be null or a pointer received from this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn kw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
