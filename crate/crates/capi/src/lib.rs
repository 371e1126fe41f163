//! C ABI for the ultra-strong Liouville toolkit: opaque config handles,
//! JSON-string results, and integer status codes, so other languages can
//! bind without touching Rust types.
//!
//! Conventions:
//! * Functions returning `int32_t` use negative values for errors (see the
//!   `LIOU_ERR_*` constants) and non-negative values for the verification
//!   exit contract: 0 all rows verified, 1 some row failed, 3 undecided
//!   rows with no failures.
//! * Every `char*` handed out through an out-parameter is heap-allocated
//!   and must be released with `liou_string_free`.
//! * Handles from `liou_config_new` must be released with
//!   `liou_config_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use liouville_core::audit::{full_report, FullReportConfig};
use liouville_core::bigmath::pow10;
use liouville_core::budget::{Budget, CancelToken};
use liouville_core::cf::convergents;
use liouville_core::error::Error;
use liouville_core::lacunary::{eval_truncation_exact, GapSequence};
use liouville_core::liouville::{generate_ultra_strong, verify_ultra_strong, BranchChoices};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Success / non-negative verification statuses are >= 0.
pub const LIOU_OK: i32 = 0;
/// A pointer or string argument was null or malformed.
pub const LIOU_ERR_INVALID_ARGUMENT: i32 = -1;
/// A precondition of the requested operation was violated.
pub const LIOU_ERR_DOMAIN: i32 = -2;
/// The exact tier would exceed the materialization budget.
pub const LIOU_ERR_BUDGET: i32 = -3;
/// Internal failure (a bug; never expected).
pub const LIOU_ERR_INTERNAL: i32 = -4;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_of(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => LIOU_ERR_BUDGET,
        Error::Parse(_) => LIOU_ERR_INVALID_ARGUMENT,
        _ => LIOU_ERR_DOMAIN,
    }
}

fn write_out(out: *mut *mut c_char, s: String) -> i32 {
    if out.is_null() {
        set_error("null output pointer");
        return LIOU_ERR_INVALID_ARGUMENT;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            LIOU_OK
        }
        Err(_) => {
            set_error("output contained a NUL byte");
            LIOU_ERR_INTERNAL
        }
    }
}

fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(LIOU_ERR_INVALID_ARGUMENT);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LIOU_ERR_INVALID_ARGUMENT
    })
}

fn guarded<F: FnOnce() -> i32>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            LIOU_ERR_INTERNAL
        }
    }
}

/// Last error message for this thread, or null when none was recorded.
/// The caller owns the returned string (release with `liou_string_free`).
#[no_mangle]
pub extern "C" fn liou_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Release a string produced by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through this library's
/// out-parameters (or `liou_last_error`) and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn liou_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Static library version string; do not free.
#[no_mangle]
pub extern "C" fn liou_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque configuration for the merged audit report.
pub struct LiouConfig {
    inner: FullReportConfig,
}

/// Fresh configuration with the default windows (branch bits 000000,
/// depth 9, gap bases 222222).
#[no_mangle]
pub extern "C" fn liou_config_new() -> *mut LiouConfig {
    Box::into_raw(Box::new(LiouConfig {
        inner: FullReportConfig::default(),
    }))
}

/// Release a configuration handle.
///
/// # Safety
/// `cfg` must come from `liou_config_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn liou_config_free(cfg: *mut LiouConfig) {
    if !cfg.is_null() {
        drop(unsafe { Box::from_raw(cfg) });
    }
}

unsafe fn config_mut<'a>(cfg: *mut LiouConfig) -> Result<&'a mut LiouConfig, i32> {
    if cfg.is_null() {
        set_error("null config handle");
        return Err(LIOU_ERR_INVALID_ARGUMENT);
    }
    Ok(unsafe { &mut *cfg })
}

/// Set the branch bits (a string over {0,1}).
///
/// # Safety
/// `cfg` must be a live handle from `liou_config_new`; `bits` must be a
/// valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn liou_config_set_bits(cfg: *mut LiouConfig, bits: *const c_char) -> i32 {
    guarded(|| {
        let cfg = match unsafe { config_mut(cfg) } {
            Ok(c) => c,
            Err(code) => return code,
        };
        let s = match read_str(bits) {
            Ok(s) => s,
            Err(code) => return code,
        };
        if BranchChoices::from_bit_str(s).is_err() {
            set_error("bits must be a string over {0,1}");
            return LIOU_ERR_INVALID_ARGUMENT;
        }
        cfg.inner.bits = s.to_string();
        LIOU_OK
    })
}

/// Set the construction depth (number of partial quotients).
///
/// # Safety
/// `cfg` must be a live handle from `liou_config_new`.
#[no_mangle]
pub unsafe extern "C" fn liou_config_set_depth(cfg: *mut LiouConfig, depth: u64) -> i32 {
    guarded(|| {
        let cfg = match unsafe { config_mut(cfg) } {
            Ok(c) => c,
            Err(code) => return code,
        };
        cfg.inner.depth = depth as usize;
        LIOU_OK
    })
}

/// Set the gap bases (a string over {2,3}).
///
/// # Safety
/// `cfg` must be a live handle from `liou_config_new`; `bases` must be a
/// valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn liou_config_set_gap_bases(
    cfg: *mut LiouConfig,
    bases: *const c_char,
) -> i32 {
    guarded(|| {
        let cfg = match unsafe { config_mut(cfg) } {
            Ok(c) => c,
            Err(code) => return code,
        };
        let s = match read_str(bases) {
            Ok(s) => s,
            Err(code) => return code,
        };
        if GapSequence::from_base_str(s).is_err() {
            set_error("gap bases must be a string over {2,3}");
            return LIOU_ERR_INVALID_ARGUMENT;
        }
        cfg.inner.gap_bases = s.to_string();
        LIOU_OK
    })
}

/// Set the enclosure width target to 10^-pow.
///
/// # Safety
/// `cfg` must be a live handle from `liou_config_new`.
#[no_mangle]
pub unsafe extern "C" fn liou_config_set_eps_pow10(cfg: *mut LiouConfig, pow: u32) -> i32 {
    guarded(|| {
        let cfg = match unsafe { config_mut(cfg) } {
            Ok(c) => c,
            Err(code) => return code,
        };
        cfg.inner.options.eps = BigRational::new(BigInt::from(1), BigInt::from(pow10(pow as u64)));
        LIOU_OK
    })
}

/// Set the exact-tier budget (largest materialized power-of-ten exponent).
///
/// # Safety
/// `cfg` must be a live handle from `liou_config_new`.
#[no_mangle]
pub unsafe extern "C" fn liou_config_set_budget(cfg: *mut LiouConfig, max_pow10_exp: u64) -> i32 {
    guarded(|| {
        let cfg = match unsafe { config_mut(cfg) } {
            Ok(c) => c,
            Err(code) => return code,
        };
        cfg.inner.options.budget.max_pow10_exp = max_pow10_exp;
        LIOU_OK
    })
}

/// Run the merged audit report for a configuration. On success `out_json`
/// receives the JSON row array and the return value is the verification
/// exit contract (0 / 1 / 3).
///
/// # Safety
/// `cfg` must be a live handle; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liou_full_report_json(
    cfg: *const LiouConfig,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        if cfg.is_null() {
            set_error("null config handle");
            return LIOU_ERR_INVALID_ARGUMENT;
        }
        let cfg = unsafe { &*cfg };
        match full_report(&cfg.inner) {
            Ok(rep) => {
                let exit = rep.exit_code();
                let code = write_out(out_json, rep.to_json());
                if code != LIOU_OK {
                    return code;
                }
                exit
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Generate the partial quotients for branch bits at a given depth;
/// `out_json` receives {"partial_quotients": [...], "convergents": [...]}.
///
/// # Safety
/// `bits` must be a valid NUL-terminated string; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liou_generate_json(
    bits: *const c_char,
    depth: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let bits = match read_str(bits) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let choices = match BranchChoices::from_bit_str(bits) {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return LIOU_ERR_INVALID_ARGUMENT;
            }
        };
        match generate_ultra_strong(&choices, depth as usize, &Budget::default()) {
            Ok(cf) => {
                let convs = convergents(&cf);
                let payload = serde_json::json!({
                    "partial_quotients": cf.to_decimal_strings(),
                    "convergents": convs.iter().map(|c| {
                        serde_json::json!({"n": c.n, "p": c.p.to_string(), "q": c.q.to_string()})
                    }).collect::<Vec<_>>(),
                });
                write_out(out_json, payload.to_string())
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Exact truncation evaluation at a rational "p/q"; `out_json` receives the
/// numerator, factored canonical denominator, and reduced denominator.
///
/// # Safety
/// `z` and `gap_bases` must be valid NUL-terminated strings; `out_json` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liou_eval_json(
    z: *const c_char,
    truncate: u64,
    gap_bases: *const c_char,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let z_str = match read_str(z) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let bases = match read_str(gap_bases) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let z = match parse_rational(z_str) {
            Some(z) => z,
            None => {
                set_error("z must be a fraction like 1/2");
                return LIOU_ERR_INVALID_ARGUMENT;
            }
        };
        let gaps = match GapSequence::from_base_str(bases) {
            Ok(g) => g,
            Err(e) => {
                set_error(&e.to_string());
                return LIOU_ERR_INVALID_ARGUMENT;
            }
        };
        match eval_truncation_exact(
            &z,
            &BigUint::from(truncate),
            &gaps,
            &Budget::default(),
            &CancelToken::new(),
        ) {
            Ok(approx) => write_out(out_json, approx.to_json_value().to_string()),
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

/// Ultra-strong verification rows as JSON; the return value is the
/// verification exit contract (0 / 1 / 3) or a negative error code.
///
/// # Safety
/// `bits` must be a valid NUL-terminated string; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liou_verify_json(
    bits: *const c_char,
    depth: u64,
    upto: u64,
    out_json: *mut *mut c_char,
) -> i32 {
    guarded(|| {
        let bits = match read_str(bits) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let choices = match BranchChoices::from_bit_str(bits) {
            Ok(c) => c,
            Err(e) => {
                set_error(&e.to_string());
                return LIOU_ERR_INVALID_ARGUMENT;
            }
        };
        let budget = Budget::default();
        let cf = match generate_ultra_strong(&choices, depth as usize, &budget) {
            Ok(cf) => cf,
            Err(e) => {
                set_error(&e.to_string());
                return code_of(&e);
            }
        };
        let eps = liouville_core::bigmath::default_epsilon();
        match verify_ultra_strong(&cf, upto as usize, &eps, &budget) {
            Ok(rep) => {
                let exit = rep.exit_code();
                let code = write_out(out_json, rep.to_json());
                if code != LIOU_OK {
                    return code;
                }
                exit
            }
            Err(e) => {
                set_error(&e.to_string());
                code_of(&e)
            }
        }
    })
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}
