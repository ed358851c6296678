//! C ABI over `quadrate`.
//!
//! Every fallible function returns a [`QuadrateStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`quadrate_last_error`]. Rules and Chebyshev series are opaque
//! handles; release them with the matching `_free` function.

#![allow(clippy::missing_safety_doc)]

use quadrate::aliasing::{cc_error_t, gauss_error_t_model};
use quadrate::bestapprox::{minimax_with, RemezOptions};
use quadrate::chebyshev::eval_cheb_t;
use quadrate::{Error, Family, QuadratureRule, TestFunction};
use std::cell::RefCell;
use std::ffi::{c_char, c_void, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrateStatus {
    Ok = 0,
    NullPointer = 1,
    /// Argument outside the mathematical domain (bad n, m, s, xi, tolerance).
    Domain = 2,
    /// Newton or Remez iteration did not converge.
    Convergence = 3,
    /// The integrand returned a non-finite value.
    Evaluation = 4,
    /// Output buffer shorter than required.
    BufferTooSmall = 5,
    /// Panic or other unexpected failure.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadrateFamily {
    ClenshawCurtis = 0,
    GaussLegendre = 1,
}

impl From<QuadrateFamily> for Family {
    fn from(f: QuadrateFamily) -> Self {
        match f {
            QuadrateFamily::ClenshawCurtis => Family::ClenshawCurtis,
            QuadrateFamily::GaussLegendre => Family::GaussLegendre,
        }
    }
}

/// Integrand callback: `f(x, user_data)`.
pub type QuadrateFn = Option<unsafe extern "C" fn(x: f64, user_data: *mut c_void) -> f64>;

/// Opaque quadrature rule.
pub struct QuadrateRule(QuadratureRule);

/// Opaque Chebyshev series `a_0 / 2 + sum a_m T_m`.
pub struct QuadrateChebSeries(quadrate::ChebSeries);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QuadrateStatus, msg: impl Into<String>) -> QuadrateStatus {
    set_error(msg.into());
    status
}

fn status_of(err: &Error) -> QuadrateStatus {
    match err {
        Error::NewtonConvergence { .. } | Error::RemezConvergence { .. } => {
            QuadrateStatus::Convergence
        }
        Error::Evaluation { .. } => QuadrateStatus::Evaluation,
        Error::Io(_) => QuadrateStatus::Internal,
        _ => QuadrateStatus::Domain,
    }
}

/// Runs `body`, mapping library errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), QuadrateStatus>) -> QuadrateStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => QuadrateStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(QuadrateStatus::Internal, "panic inside quadrate"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, QuadrateStatus>;
}

impl<T> OrStatus<T> for quadrate::Result<T> {
    fn or_status(self) -> Result<T, QuadrateStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), QuadrateStatus> {
    if p.is_null() {
        Err(fail(QuadrateStatus::NullPointer, format!("{what} is NULL")))
    } else {
        Ok(())
    }
}

unsafe fn copy_out(src: &[f64], out: *mut f64, len: usize) -> Result<(), QuadrateStatus> {
    non_null(out, "output buffer")?;
    if len < src.len() {
        return Err(fail(
            QuadrateStatus::BufferTooSmall,
            format!("buffer holds {len} values, {} needed", src.len()),
        ));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), out, src.len());
    Ok(())
}

fn callback(f: QuadrateFn, user_data: *mut c_void) -> Result<impl Fn(f64) -> f64, QuadrateStatus> {
    let f = f.ok_or_else(|| fail(QuadrateStatus::NullPointer, "callback is NULL"))?;
    let ctx = user_data as usize;
    Ok(move |x: f64| unsafe { f(x, ctx as *mut c_void) })
}

/// Message of the last failure on this thread, or NULL. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn quadrate_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the `n`-point rule of `family`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_new(
    family: QuadrateFamily,
    n: usize,
    out: *mut *mut QuadrateRule,
) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        let rule = QuadratureRule::new(family.into(), n).or_status()?;
        *out = Box::into_raw(Box::new(QuadrateRule(rule)));
        Ok(())
    })
}

/// Releases a rule; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_free(rule: *mut QuadrateRule) {
    if !rule.is_null() {
        drop(Box::from_raw(rule));
    }
}

/// Number of nodes, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_len(rule: *const QuadrateRule) -> usize {
    rule.as_ref().map_or(0, |r| r.0.n())
}

/// Copies the nodes, largest first, into `out` (capacity `len`).
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_nodes(
    rule: *const QuadrateRule,
    out: *mut f64,
    len: usize,
) -> QuadrateStatus {
    guard(|| {
        non_null(rule, "rule")?;
        copy_out((*rule).0.nodes(), out, len)
    })
}

/// Copies the weights into `out` (capacity `len`).
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_weights(
    rule: *const QuadrateRule,
    out: *mut f64,
    len: usize,
) -> QuadrateStatus {
    guard(|| {
        non_null(rule, "rule")?;
        copy_out((*rule).0.weights(), out, len)
    })
}

/// `sum w_k f(x_k)`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_apply(
    rule: *const QuadrateRule,
    f: QuadrateFn,
    user_data: *mut c_void,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(rule, "rule")?;
        non_null(out, "out")?;
        let f = callback(f, user_data)?;
        *out = (*rule).0.apply(f).or_status()?;
        Ok(())
    })
}

/// `I(T_m) - Q_n(T_m)` for the given rule.
#[no_mangle]
pub unsafe extern "C" fn quadrate_rule_error_cheb_t(
    rule: *const QuadrateRule,
    m: u64,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(rule, "rule")?;
        non_null(out, "out")?;
        *out = (*rule).0.error_on_cheb_t(m);
        Ok(())
    })
}

/// Degree-`degree` Chebyshev interpolant of `f` at the Chebyshev-Lobatto points.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_interpolate(
    f: QuadrateFn,
    user_data: *mut c_void,
    degree: usize,
    out: *mut *mut QuadrateChebSeries,
) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = callback(f, user_data)?;
        let series = quadrate::ChebSeries::interpolate(f, degree).or_status()?;
        *out = Box::into_raw(Box::new(QuadrateChebSeries(series)));
        Ok(())
    })
}

/// Series from explicit coefficients (`a_0` halved on evaluation).
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_from_coeffs(
    coeffs: *const f64,
    len: usize,
    out: *mut *mut QuadrateChebSeries,
) -> QuadrateStatus {
    guard(|| {
        non_null(coeffs, "coeffs")?;
        non_null(out, "out")?;
        let c = std::slice::from_raw_parts(coeffs, len).to_vec();
        let series = quadrate::ChebSeries::new(c).or_status()?;
        *out = Box::into_raw(Box::new(QuadrateChebSeries(series)));
        Ok(())
    })
}

/// Releases a series; NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_free(series: *mut QuadrateChebSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Number of coefficients, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_len(series: *const QuadrateChebSeries) -> usize {
    series.as_ref().map_or(0, |s| s.0.coeffs().len())
}

#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_coeffs(
    series: *const QuadrateChebSeries,
    out: *mut f64,
    len: usize,
) -> QuadrateStatus {
    guard(|| {
        non_null(series, "series")?;
        copy_out((*series).0.coeffs(), out, len)
    })
}

/// Clenshaw evaluation at `x` in `[-1, 1]`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_evaluate(
    series: *const QuadrateChebSeries,
    x: f64,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(series, "series")?;
        non_null(out, "out")?;
        *out = (*series).0.evaluate(x).or_status()?;
        Ok(())
    })
}

/// Exact integral of the series over `[-1, 1]`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_integral(
    series: *const QuadrateChebSeries,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(series, "series")?;
        non_null(out, "out")?;
        *out = (*series).0.integral();
        Ok(())
    })
}

/// `T_m(x)` for `x` in `[-1, 1]`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cheb_t(m: u64, x: f64, out: *mut f64) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = eval_cheb_t(m, x).or_status()?;
        Ok(())
    })
}

/// Closed-form Clenshaw-Curtis error `E_n^C(T_m)`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_cc_error_t(n: usize, m: u64, out: *mut f64) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = cc_error_t(n, m).or_status()?;
        Ok(())
    })
}

/// Leading-order model of the Gauss error `E_n^G(T_m)`, even `m >= 2n`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_gauss_error_t_model(
    n: usize,
    m: u64,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = gauss_error_t_model(n, m).or_status()?;
        Ok(())
    })
}

/// Minimax error of degree-`degree` polynomials for a callback on `[-1, 1]`.
#[no_mangle]
pub unsafe extern "C" fn quadrate_minimax(
    f: QuadrateFn,
    user_data: *mut c_void,
    degree: usize,
    tol: f64,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = callback(f, user_data)?;
        let res = minimax_with(f, degree, &RemezOptions::with_tol(tol)).or_status()?;
        *out = res.error;
        Ok(())
    })
}

/// Minimax error for `|x - xi|^s`, with the kink added to the search grid.
#[no_mangle]
pub unsafe extern "C" fn quadrate_minimax_abs_power(
    s: f64,
    xi: f64,
    degree: usize,
    tol: f64,
    out: *mut f64,
) -> QuadrateStatus {
    guard(|| {
        non_null(out, "out")?;
        let f = TestFunction::abs_power(s, xi).or_status()?;
        let opts = RemezOptions {
            breakpoints: vec![xi],
            ..RemezOptions::with_tol(tol)
        };
        *out = minimax_with(|x| f.eval(x), degree, &opts)
            .or_status()?
            .error;
        Ok(())
    })
}
