//! C ABI over `gcube`.
//!
//! Objects cross the boundary as opaque handles created by `*_from_*`
//! functions and released by the matching `*_free`. Every call returns a
//! [`GcubeStatus`]; on failure `gcube_last_error` describes the problem for
//! the calling thread. Panics are caught and reported as
//! [`GcubeStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gcube::entropy::{binomial_entropy, entropy, pmf_signed_sum, SignedBernoulliSum};
use gcube::gowers::{energy_e, energy_e_tilde, energy_p, gowers_norm_pow};
use gcube::io::{function_from_json, set_from_json};
use gcube::solver::{solve_exponent, witness_lower_bound};
use gcube::{CubeSet, GcubeError, LatticeFunction, SimplexVector, SolverConfig};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcubeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Numeric = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcubeEnergyKind {
    /// Parallelotope count `P_k`.
    P = 0,
    /// Equal k-fold sums `E_k`.
    E = 1,
    /// Equal consecutive differences `Ẽ_k`.
    ETilde = 2,
}

/// Solver output for `gcube_solve_exponent`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GcubeExponent {
    pub k: u32,
    pub n: u32,
    pub t: f64,
    pub p: f64,
    pub residual: f64,
    pub bracket_width: f64,
}

/// Opaque finitely supported function on ℤ^d.
pub struct GcubeFunction(LatticeFunction);

/// Opaque subset of a discrete cube.
pub struct GcubeSet(CubeSet);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Null(&'static str),
    Lib(GcubeError),
    Utf8,
}

impl From<GcubeError> for Fail {
    fn from(e: GcubeError) -> Self {
        Fail::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GcubeStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GcubeStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed for {what}"));
            GcubeStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("input is not valid UTF-8".into());
            GcubeStatus::Parse
        }
        Ok(Err(Fail::Lib(e))) => {
            let status = match &e {
                GcubeError::Parse(_) => GcubeStatus::Parse,
                GcubeError::Numeric(_) => GcubeStatus::Numeric,
                _ => GcubeStatus::InvalidArgument,
            };
            set_error(e.to_string());
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GcubeStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `gcube_*` call on the same thread.
#[no_mangle]
pub extern "C" fn gcube_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gcube_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a function document `{"d": .., "entries": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_function_from_json(
    json: *const c_char,
    out_handle: *mut *mut GcubeFunction,
) -> GcubeStatus {
    guard(|| {
        let slot = out(out_handle, "out")?;
        let f = function_from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(GcubeFunction(f)));
        Ok(())
    })
}

/// Builds the one-dimensional function `j ↦ values[j]` for `0 ≤ j < len`.
///
/// # Safety
/// `values` must point to `len` doubles and `out_handle` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gcube_function_from_real(
    values: *const f64,
    len: usize,
    out_handle: *mut *mut GcubeFunction,
) -> GcubeStatus {
    guard(|| {
        let slot = out(out_handle, "out")?;
        let values = slice(values, len, "values")?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(GcubeError::Parse("non-finite function value".into()).into());
        }
        *slot = Box::into_raw(Box::new(GcubeFunction(LatticeFunction::from_real_1d(values))));
        Ok(())
    })
}

/// # Safety
/// `f` must come from a `gcube_function_from_*` call and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gcube_function_free(f: *mut GcubeFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Parses a set document `{"d": .., "n": .., "members": [..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out_handle` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_set_from_json(json: *const c_char, out_handle: *mut *mut GcubeSet) -> GcubeStatus {
    guard(|| {
        let slot = out(out_handle, "out")?;
        let s = set_from_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(GcubeSet(s)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from `gcube_set_from_json` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gcube_set_free(s: *mut GcubeSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes `‖f‖_{U^k}^{2^k}` to `value`.
///
/// # Safety
/// `f` must be a live handle and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_gowers_norm_pow(f: *const GcubeFunction, k: u32, value: *mut f64) -> GcubeStatus {
    guard(|| {
        let slot = out(value, "value")?;
        let f = f.as_ref().ok_or(Fail::Null("f"))?;
        *slot = gowers_norm_pow(&f.0, k as usize)?;
        Ok(())
    })
}

/// Writes the exact energy as a decimal string; release it with
/// `gcube_string_free`.
///
/// # Safety
/// `s` must be a live handle and `decimal` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_energy(
    s: *const GcubeSet,
    kind: GcubeEnergyKind,
    k: u32,
    decimal: *mut *mut c_char,
) -> GcubeStatus {
    guard(|| {
        let slot = out(decimal, "decimal")?;
        let s = s.as_ref().ok_or(Fail::Null("set"))?;
        let k = k as usize;
        let value = match kind {
            GcubeEnergyKind::P => energy_p(&s.0, k)?,
            GcubeEnergyKind::E => energy_e(&s.0, k)?,
            GcubeEnergyKind::ETilde => energy_e_tilde(&s.0, k)?,
        };
        *slot = CString::new(value.to_string()).expect("digits only").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gcube_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Solves for `t_{k,n}` with default settings apart from `tolerance` and `seed`.
///
/// # Safety
/// `result` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_solve_exponent(
    n: u32,
    k: u32,
    tolerance: f64,
    seed: u64,
    result: *mut GcubeExponent,
) -> GcubeStatus {
    guard(|| {
        let slot = out(result, "result")?;
        let cfg = SolverConfig {
            t_tolerance: tolerance,
            rng_seed: seed,
            ..SolverConfig::default()
        };
        let r = solve_exponent(n as usize, k as usize, &cfg)?;
        *slot = GcubeExponent {
            k,
            n,
            t: r.t,
            p: r.p,
            residual: r.residual,
            bracket_width: r.bracket_width,
        };
        Ok(())
    })
}

/// The root `t` of `Φ_t(g) = 1` for a probability vector `g` of length `n`.
///
/// # Safety
/// `g` must point to `n` doubles and `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gcube_witness_lower_bound(
    n: u32,
    k: u32,
    g: *const f64,
    value: *mut f64,
) -> GcubeStatus {
    guard(|| {
        let slot = out(value, "value")?;
        let g = SimplexVector::new(slice(g, n as usize, "g")?.to_vec())?;
        *slot = witness_lower_bound(n as usize, k as usize, &g)?;
        Ok(())
    })
}

/// Entropy in bits of `B(m, 1/2)`.
///
/// # Safety
/// `value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gcube_binomial_entropy(m: u32, value: *mut f64) -> GcubeStatus {
    guard(|| {
        let slot = out(value, "value")?;
        if m == 0 {
            return Err(GcubeError::Domain("binomial entropy needs m >= 1".into()).into());
        }
        *slot = binomial_entropy(m as usize);
        Ok(())
    })
}

/// Entropy in bits of `h_1 X_1 + ... + h_m X_m` for fair Bernoulli `X_i`.
///
/// # Safety
/// `coefficients` must point to `len` integers and `value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gcube_signed_sum_entropy(
    coefficients: *const i64,
    len: usize,
    value: *mut f64,
) -> GcubeStatus {
    guard(|| {
        let slot = out(value, "value")?;
        let h = slice(coefficients, len, "coefficients")?.to_vec();
        let sum = SignedBernoulliSum::new(h)?;
        *slot = entropy(&pmf_signed_sum(&sum));
        Ok(())
    })
}
