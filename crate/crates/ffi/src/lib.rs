// SPDX-License-Identifier: Apache-2.0

//! C interface. Codes and reports are opaque handles released with their
//! `_free` functions; field elements cross the boundary as enumeration
//! indices (`0..q`). Every function returns an `HlrcStatus`; on failure
//! `hlrc_last_error` describes the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperlrc::construct::LocalCode;
use hyperlrc::io::{self, RunConfig};
use hyperlrc::verify::{self, Budget, Strategy, Verdict, VerifyOptions, VerifyReport};
use hyperlrc::{Error, Fe};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Field = 4,
    Curve = 5,
    Construction = 6,
    Infeasible = 7,
    Singular = 8,
    Io = 9,
    Panic = 10,
}

/// Verdict of a verification report.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlrcVerdict {
    Optimal = 0,
    AlmostOptimal = 1,
    BoundOnly = 2,
    Rejected = 3,
}

/// Distance strategy for `hlrc_verify`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HlrcStrategy {
    Auto = 0,
    Support = 1,
    Exhaustive = 2,
}

/// A constructed or loaded code.
pub struct HlrcCode(LocalCode);

/// A verification report.
pub struct HlrcReport(VerifyReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HlrcStatus {
    use Error::*;
    match e {
        CompositeCharacteristic(_) | EvenCharacteristic | ReducibleModulus(_) | BadModulus(_) | FieldTooLarge(_)
        | DivisionByZero => HlrcStatus::Field,
        BadDegree(_) | SingularModel => HlrcStatus::Curve,
        Infeasible(_) => HlrcStatus::Infeasible,
        SingularSubmatrix(_) => HlrcStatus::Singular,
        Parse(_) => HlrcStatus::Parse,
        Config(m) if m.starts_with("field") => HlrcStatus::Field,
        Config(_) => HlrcStatus::InvalidArgument,
        Io(_) => HlrcStatus::Io,
        _ => HlrcStatus::Construction,
    }
}

fn guard<F: FnOnce() -> Result<(), (HlrcStatus, String)>>(f: F) -> HlrcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HlrcStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HlrcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (HlrcStatus, String) {
    (status_of(&e), format!("{} ({})", e, e.kind()))
}

fn null(what: &str) -> (HlrcStatus, String) {
    (HlrcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HlrcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HlrcStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn code_arg<'a>(p: *const HlrcCode) -> Result<&'a LocalCode, (HlrcStatus, String)> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| null("code"))
}

fn elements(code: &LocalCode, raw: &[u32]) -> Result<Vec<Fe>, (HlrcStatus, String)> {
    let q = code.field.order();
    match raw.iter().find(|&&i| i >= q) {
        Some(i) => Err((HlrcStatus::InvalidArgument, format!("symbol {i} is not below the field order {q}"))),
        None => raw.iter().map(|&i| code.field.element(i).map_err(lib)).collect(),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hlrc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty if none. Valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hlrc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hlrc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a code from a JSON run configuration, e.g.
/// `{"field": "9", "curve": "x5+x3+2x", "subgroup": "U", "ell": 4, "t": 4}`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_build(config_json: *const c_char, out: *mut *mut HlrcCode) -> HlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = RunConfig::from_json(str_arg(config_json, "config_json")?).map_err(lib)?;
        let code = io::build_from(&cfg).map_err(lib)?;
        *out = Box::into_raw(Box::new(HlrcCode(code)));
        Ok(())
    })
}

/// Loads a code from matrix CSV text and repair-group text.
///
/// # Safety
/// Both strings must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_load(
    matrix_csv: *const c_char,
    groups: *const c_char,
    out: *mut *mut HlrcCode,
) -> HlrcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let code = io::load_code(str_arg(matrix_csv, "matrix_csv")?, str_arg(groups, "groups")?).map_err(lib)?;
        *out = Box::into_raw(Box::new(HlrcCode(code)));
        Ok(())
    })
}

/// # Safety
/// `code` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_free(code: *mut HlrcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length, dimension (generator rows), locality and field order.
///
/// # Safety
/// `code` must be a live handle; each output pointer may be null.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_params(
    code: *const HlrcCode,
    n: *mut usize,
    k: *mut usize,
    r: *mut usize,
    q: *mut u32,
) -> HlrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        for (p, v) in [(n, c.n()), (k, c.k()), (r, c.r)] {
            if !p.is_null() {
                *p = v;
            }
        }
        if !q.is_null() {
            *q = c.field.order();
        }
        Ok(())
    })
}

/// Generator matrix as CSV text; release with `hlrc_string_free`.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_matrix_csv(code: *const HlrcCode, out: *mut *mut c_char) -> HlrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(io::matrix_to_csv(&c.field, &c.generator));
        Ok(())
    })
}

/// Encodes `k` message symbols into `n` codeword symbols.
///
/// # Safety
/// `message` must hold `k` values and `word` room for `n`.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_encode(
    code: *const HlrcCode,
    message: *const u32,
    k: usize,
    word: *mut u32,
    n: usize,
) -> HlrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if message.is_null() || word.is_null() {
            return Err(null("message or word"));
        }
        if k != c.k() || n != c.n() {
            return Err((HlrcStatus::InvalidArgument, format!("expected k = {}, n = {}", c.k(), c.n())));
        }
        let msg = elements(c, std::slice::from_raw_parts(message, k))?;
        let w = c.encode(&msg);
        let out = std::slice::from_raw_parts_mut(word, n);
        for (o, x) in out.iter_mut().zip(w) {
            *o = x.index();
        }
        Ok(())
    })
}

/// Recovers `word[erased]` from the rest of its repair group.
///
/// # Safety
/// `word` must hold `n` values; `symbol` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_code_repair(
    code: *const HlrcCode,
    word: *const u32,
    n: usize,
    erased: usize,
    symbol: *mut u32,
) -> HlrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if word.is_null() || symbol.is_null() {
            return Err(null("word or symbol"));
        }
        if n != c.n() || erased >= n {
            return Err((HlrcStatus::InvalidArgument, format!("need n = {} and erased < n", c.n())));
        }
        let w = elements(c, std::slice::from_raw_parts(word, n))?;
        *symbol = verify::repair(c, &w, erased).map_err(lib)?.index();
        Ok(())
    })
}

/// Runs rank, distance, locality and repair checks. Zero budgets select the
/// library defaults.
///
/// # Safety
/// `code` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_verify(
    code: *const HlrcCode,
    strategy: HlrcStrategy,
    support_budget: u64,
    exhaustive_budget: u64,
    repair_trials: usize,
    seed: u64,
    out: *mut *mut HlrcReport,
) -> HlrcStatus {
    guard(|| {
        let c = code_arg(code)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = Budget::default();
        let opts = VerifyOptions {
            strategy: match strategy {
                HlrcStrategy::Auto => Strategy::Auto,
                HlrcStrategy::Support => Strategy::Support,
                HlrcStrategy::Exhaustive => Strategy::Exhaustive,
            },
            budget: Budget {
                support: if support_budget == 0 { d.support } else { support_budget },
                exhaustive: if exhaustive_budget == 0 { d.exhaustive } else { exhaustive_budget },
            },
            repair_trials,
            seed,
        };
        *out = Box::into_raw(Box::new(HlrcReport(verify::verify(c, &opts))));
        Ok(())
    })
}

/// # Safety
/// `report` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hlrc_report_free(report: *mut HlrcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Verdict, exact distance (-1 when unknown) and Singleton-type bound.
///
/// # Safety
/// `report` must be a live handle; output pointers may be null.
#[no_mangle]
pub unsafe extern "C" fn hlrc_report_summary(
    report: *const HlrcReport,
    verdict: *mut HlrcVerdict,
    distance: *mut i64,
    bound: *mut i64,
) -> HlrcStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.0;
        if !verdict.is_null() {
            *verdict = match rep.verdict {
                Verdict::Optimal => HlrcVerdict::Optimal,
                Verdict::AlmostOptimal => HlrcVerdict::AlmostOptimal,
                Verdict::BoundOnly => HlrcVerdict::BoundOnly,
                Verdict::Rejected => HlrcVerdict::Rejected,
            };
        }
        if !distance.is_null() {
            *distance = rep.d_exact.map_or(-1, |d| d as i64);
        }
        if !bound.is_null() {
            *bound = rep.singleton_bound;
        }
        Ok(())
    })
}

/// The report as versioned JSON; release with `hlrc_string_free`.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hlrc_report_json(report: *const HlrcReport, out: *mut *mut c_char) -> HlrcStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = into_c_string(io::to_json(rep).map_err(lib)?);
        Ok(())
    })
}
