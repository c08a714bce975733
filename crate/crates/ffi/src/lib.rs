//! C interface to `lommel-core`.
//!
//! Every fallible function returns a [`LommelStatus`] and writes its result
//! through an out-pointer. On failure the message of the last error on the
//! calling thread is available from [`lommel_last_error`]. Strings returned by
//! the library are freed with [`lommel_string_free`], handles with their own
//! `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lommel_core::hyp_trig::{hyp2f1_trig, lommel_trig_integral};
use lommel_core::lommel::{lommel_series, validate_params};
use lommel_core::pade::{odd_family_raw, triple_even_derivative, triple_general, ApproximantTriple};
use lommel_core::quadrature::{lommel_cos_quadrature, lommel_quadrature};
use lommel_core::ratpoly::pade_order_check;
use lommel_core::roots::{all_roots, family_poly, table1, table2, Family, RootSet, Which};
use lommel_core::{EvalResult, LommelError};

pub const LOMMEL_METHOD_SERIES: u32 = 0;
pub const LOMMEL_METHOD_QUADRATURE: u32 = 1;
pub const LOMMEL_METHOD_COSQUAD: u32 = 2;
pub const LOMMEL_METHOD_TRIG: u32 = 3;

pub const LOMMEL_FAMILY_EVEN: u32 = 0;
pub const LOMMEL_FAMILY_ODD: u32 = 1;

pub const LOMMEL_POLY_A: u32 = 0;
pub const LOMMEL_POLY_B: u32 = 1;
pub const LOMMEL_POLY_C: u32 = 2;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LommelStatus {
    Ok = 0,
    ExcludedCase = 1,
    Pole = 2,
    Domain = 3,
    NonConvergence = 4,
    ExcludedIndex = 5,
    Reconciliation = 6,
    Parse = 7,
    NullPointer = 8,
    InvalidArgument = 9,
    Panic = 10,
}

/// An approximant triple (A, B, C).
pub struct LommelTriple {
    inner: ApproximantTriple,
}

/// All roots of one polynomial.
pub struct LommelRootSet {
    inner: RootSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &LommelError) -> LommelStatus {
    match e {
        LommelError::ExcludedCase { .. } => LommelStatus::ExcludedCase,
        LommelError::Pole(_) => LommelStatus::Pole,
        LommelError::Domain(_) => LommelStatus::Domain,
        LommelError::NonConvergence(_) => LommelStatus::NonConvergence,
        LommelError::ExcludedIndex(_) => LommelStatus::ExcludedIndex,
        LommelError::Reconciliation(_) => LommelStatus::Reconciliation,
        LommelError::Parse(_) => LommelStatus::Parse,
    }
}

enum Failure {
    Lib(LommelError),
    Null(&'static str),
    Invalid(String),
}

impl From<LommelError> for Failure {
    fn from(e: LommelError) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LommelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LommelStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(name))) => {
            set_error(format!("{name} is null"));
            LommelStatus::NullPointer
        }
        Ok(Err(Failure::Invalid(msg))) => {
            set_error(msg);
            LommelStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic".into());
            LommelStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, name: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(name));
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

fn family(code: u32) -> Result<Family, Failure> {
    match code {
        LOMMEL_FAMILY_EVEN => Ok(Family::Even),
        LOMMEL_FAMILY_ODD => Ok(Family::Odd),
        _ => Err(Failure::Invalid(format!("unknown family code {code}"))),
    }
}

fn which(code: u32) -> Result<Which, Failure> {
    match code {
        LOMMEL_POLY_A => Ok(Which::A),
        LOMMEL_POLY_B => Ok(Which::B),
        LOMMEL_POLY_C => Ok(Which::C),
        _ => Err(Failure::Invalid(format!("unknown polynomial code {code}"))),
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure::Invalid("output contains a NUL byte".into()))
}

/// Message of the last error on this thread, or null. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lommel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lommel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// s_{mu,nu}(z) by one of the `LOMMEL_METHOD_*` methods. `est_error` may be null.
///
/// # Safety
/// `value` must be valid for writes; `est_error` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_eval(
    mu: f64,
    nu: f64,
    z: f64,
    method: u32,
    tol: f64,
    value: *mut f64,
    est_error: *mut f64,
) -> LommelStatus {
    guard(|| {
        if !(tol > 0.0) {
            return Err(Failure::Invalid(format!("tol = {tol} must be positive")));
        }
        let r: EvalResult = match method {
            LOMMEL_METHOD_SERIES => lommel_series(&validate_params(mu, nu)?, z, tol)?,
            LOMMEL_METHOD_QUADRATURE => lommel_quadrature(mu, nu, z, tol)?,
            LOMMEL_METHOD_COSQUAD => lommel_cos_quadrature(mu, nu, z, tol)?,
            LOMMEL_METHOD_TRIG => {
                if mu < 0.0 || mu.fract() != 0.0 {
                    return Err(Failure::Invalid(format!("the trig method needs a nonnegative integer mu, got {mu}")));
                }
                lommel_trig_integral(mu as u32, nu, z, tol)?
            }
            _ => return Err(Failure::Invalid(format!("unknown method code {method}"))),
        };
        write(value, r.value, "value")?;
        if !est_error.is_null() {
            est_error.write(r.est_error);
        }
        Ok(())
    })
}

/// 2F1(1/2+nu, 1/2-nu; n+1/2; sin^2(theta/2)) in closed trigonometric form.
///
/// # Safety
/// `value` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_hyp2f1_trig(n: u32, nu: f64, theta: f64, value: *mut f64) -> LommelStatus {
    guard(|| write(value, hyp2f1_trig(n, nu, theta)?, "value"))
}

unsafe fn emit_triple(t: ApproximantTriple, out: *mut *mut LommelTriple) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(Box::into_raw(Box::new(LommelTriple { inner: t })));
    Ok(())
}

/// Even-family triple (0, 2n) in primitive normalization.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_even(n: u32, out: *mut *mut LommelTriple) -> LommelStatus {
    guard(|| emit_triple(triple_even_derivative(n).to_primitive(), out))
}

/// Odd-family triple (1, 2n+1) in primitive normalization.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_odd(n: u32, out: *mut *mut LommelTriple) -> LommelStatus {
    guard(|| emit_triple(odd_family_raw(n).to_primitive(), out))
}

/// Triple (m, n) at the raw scale, so `lommel_triple_eval` gives s_{m+1/2,n+1/2}.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_general(m: u32, n: u32, out: *mut *mut LommelTriple) -> LommelStatus {
    guard(|| emit_triple(triple_general(m, n)?, out))
}

/// # Safety
/// `t` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_free(t: *mut LommelTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// JSON form of the triple; free with `lommel_string_free`.
///
/// # Safety
/// `t` must be a live triple handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_json(t: *const LommelTriple, out: *mut *mut c_char) -> LommelStatus {
    guard(|| {
        let t = handle(t, "triple")?;
        let s = into_c_string(t.inner.to_json())?;
        write(out, s, "out")
    })
}

/// Parses a triple from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_from_json(json: *const c_char, out: *mut *mut LommelTriple) -> LommelStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| LommelError::Parse("input is not UTF-8".into()))?;
        emit_triple(ApproximantTriple::from_json(text)?, out)
    })
}

/// Degree of A, B or C. A zero polynomial reports -1.
///
/// # Safety
/// `t` must be a live triple handle and `degree` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_degree(t: *const LommelTriple, poly: u32, degree: *mut i32) -> LommelStatus {
    guard(|| {
        let t = handle(t, "triple")?;
        let p = match which(poly)? {
            Which::A => &t.inner.a,
            Which::B => &t.inner.b,
            Which::C => &t.inner.c,
        };
        write(degree, p.degree().map_or(-1, |d| d as i32), "degree")
    })
}

/// (A - B cos z - C sin z) / z^(n+1/2).
///
/// # Safety
/// `t` must be a live triple handle and `value` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_eval(t: *const LommelTriple, z: f64, value: *mut f64) -> LommelStatus {
    guard(|| write(value, handle(t, "triple")?.inner.lommel_value(z), "value"))
}

/// Whether A - B cos z - C sin z = O(z^order), checked exactly.
///
/// # Safety
/// `t` must be a live triple handle and `holds` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_triple_order_check(t: *const LommelTriple, order: u32, holds: *mut bool) -> LommelStatus {
    guard(|| write(holds, pade_order_check(&handle(t, "triple")?.inner, order as usize).holds, "holds"))
}

/// Roots of polynomial `poly` (`LOMMEL_POLY_*`) of family triple n.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_roots(family_code: u32, poly: u32, n: u32, out: *mut *mut LommelRootSet) -> LommelStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let set = all_roots(&family_poly(family(family_code)?, which(poly)?, n))?;
        out.write(Box::into_raw(Box::new(LommelRootSet { inner: set })));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lommel_rootset_free(r: *mut LommelRootSet) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of roots; 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live root set handle.
#[no_mangle]
pub unsafe extern "C" fn lommel_rootset_len(r: *const LommelRootSet) -> usize {
    r.as_ref().map_or(0, |r| r.inner.roots.len())
}

/// Root `index` and its residual. `residual` may be null.
///
/// # Safety
/// `r` must be a live root set handle; `re` and `im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_rootset_get(
    r: *const LommelRootSet,
    index: usize,
    re: *mut f64,
    im: *mut f64,
    residual: *mut f64,
) -> LommelStatus {
    guard(|| {
        let r = &handle(r, "root set")?.inner;
        let z = r
            .roots
            .get(index)
            .ok_or_else(|| Failure::Invalid(format!("index {index} out of range for {} roots", r.roots.len())))?;
        write(re, z.re, "re")?;
        write(im, z.im, "im")?;
        if !residual.is_null() {
            residual.write(r.residuals[index]);
        }
        Ok(())
    })
}

/// Zero discrepancy table 1 or 2 as CSV; free with `lommel_string_free`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn lommel_table_csv(which_table: u32, kmax: u32, out: *mut *mut c_char) -> LommelStatus {
    guard(|| {
        let table = match which_table {
            1 => table1(kmax)?,
            2 => table2(kmax)?,
            _ => return Err(Failure::Invalid(format!("no table {which_table}"))),
        };
        write(out, into_c_string(table.to_csv())?, "out")
    })
}
