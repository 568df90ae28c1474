//! C ABI for `tfweyl`.
//!
//! Objects cross the boundary as opaque heap handles (`TfwSignal`,
//! `TfwField`, `TfwOperator`) that the caller releases with the matching
//! `*_free`. Every fallible call returns a `TfwStatus`; on failure a
//! human-readable message is available from `tfw_last_error_message` on the
//! same thread. Complex data is passed as separate real and imaginary `double`
//! arrays, row-major for fields and matrices.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use tfweyl::quantization::{apply, tau_matrix, weyl_matrix, OperatorMatrix};
use tfweyl::verify::{check_exponents, ExponentTuple};
use tfweyl::{gaussian, make_grid, stft1, tau_wigner, wigner, Axes, Error, Field2, Signal1, TauParam};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGrid = 2,
    GridMismatch = 3,
    CapExceeded = 4,
    InvalidArgument = 5,
    BufferSize = 6,
    Panic = 7,
}

/// Physical meaning of the two axes of a field.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TfwAxes {
    PositionFrequency = 0,
    PositionPosition = 1,
    FrequencyFrequency = 2,
}

impl From<TfwAxes> for Axes {
    fn from(a: TfwAxes) -> Self {
        match a {
            TfwAxes::PositionFrequency => Axes::PositionFrequency,
            TfwAxes::PositionPosition => Axes::PositionPosition,
            TfwAxes::FrequencyFrequency => Axes::FrequencyFrequency,
        }
    }
}

impl From<Axes> for TfwAxes {
    fn from(a: Axes) -> Self {
        match a {
            Axes::PositionFrequency => TfwAxes::PositionFrequency,
            Axes::PositionPosition => TfwAxes::PositionPosition,
            Axes::FrequencyFrequency => TfwAxes::FrequencyFrequency,
        }
    }
}

/// A sampled signal on a centered grid.
pub struct TfwSignal(Signal1);

/// An `N×N` phase-space field.
pub struct TfwField(Field2);

/// An `N×N` operator matrix.
pub struct TfwOperator(OperatorMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TfwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidGrid(_) => TfwStatus::InvalidGrid,
            Error::GridMismatch { .. } => TfwStatus::GridMismatch,
            Error::CapExceeded { .. } => TfwStatus::CapExceeded,
            _ => TfwStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|l| *l.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TfwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|l| *l.borrow_mut() = None);
            TfwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TfwStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TfwStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn read_complex(re: *const f64, im: *const f64, len: usize) -> Result<Vec<Complex64>, Failure> {
    if re.is_null() {
        return Err(null("re"));
    }
    let re = std::slice::from_raw_parts(re, len);
    Ok(if im.is_null() {
        re.iter().map(|&r| Complex64::new(r, 0.0)).collect()
    } else {
        let im = std::slice::from_raw_parts(im, len);
        re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect()
    })
}

unsafe fn write_complex(data: &[Complex64], re: *mut f64, im: *mut f64, len: usize) -> Result<(), Failure> {
    if len != data.len() {
        return Err(Failure(TfwStatus::BufferSize, format!("buffer holds {len} values, need {}", data.len())));
    }
    if re.is_null() || im.is_null() {
        return Err(null("output buffer"));
    }
    let re = std::slice::from_raw_parts_mut(re, len);
    let im = std::slice::from_raw_parts_mut(im, len);
    for (k, z) in data.iter().enumerate() {
        re[k] = z.re;
        im[k] = z.im;
    }
    Ok(())
}

unsafe fn read_exponent(s: *const c_char, what: &str) -> Result<tfweyl::Exponent, Failure> {
    let s = deref(s, what)?;
    let text =
        CStr::from_ptr(s).to_str().map_err(|_| Failure(TfwStatus::InvalidArgument, format!("{what} is not UTF-8")))?;
    Ok(text.parse()?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tfw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failed call on this thread, or NULL after a
/// success. Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn tfw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|l| l.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a signal from `n` samples. `im` may be NULL for real data.
#[no_mangle]
pub unsafe extern "C" fn tfw_signal_new(
    n: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut TfwSignal,
) -> TfwStatus {
    guard(|| {
        let grid = make_grid(n)?;
        let s = Signal1::new(grid, read_complex(re, im, n)?)?;
        put(out, TfwSignal(s))
    })
}

/// The unit-norm Gaussian `2^{1/4} e^{−πt²}` on an `n`-point grid.
#[no_mangle]
pub unsafe extern "C" fn tfw_signal_gaussian(n: usize, out: *mut *mut TfwSignal) -> TfwStatus {
    guard(|| put(out, TfwSignal(gaussian(make_grid(n)?))))
}

/// Number of samples, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn tfw_signal_len(s: *const TfwSignal) -> usize {
    s.as_ref().map_or(0, |s| s.0.grid().len())
}

/// Copies the samples into caller buffers of exactly `len` values.
#[no_mangle]
pub unsafe extern "C" fn tfw_signal_copy_out(s: *const TfwSignal, re: *mut f64, im: *mut f64, len: usize) -> TfwStatus {
    guard(|| write_complex(deref(s, "signal")?.0.samples(), re, im, len))
}

#[no_mangle]
pub unsafe extern "C" fn tfw_signal_free(s: *mut TfwSignal) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Builds an `n×n` field from `n*n` row-major samples. `im` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn tfw_field_new(
    n: usize,
    axes: TfwAxes,
    re: *const f64,
    im: *const f64,
    out: *mut *mut TfwField,
) -> TfwStatus {
    guard(|| {
        let grid = make_grid(n)?;
        let f = Field2::new(grid, axes.into(), read_complex(re, im, n * n)?)?;
        put(out, TfwField(f))
    })
}

/// Grid size `n` of an `n×n` field, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn tfw_field_grid_len(f: *const TfwField) -> usize {
    f.as_ref().map_or(0, |f| f.0.grid().len())
}

/// Axes tag of a non-NULL field.
#[no_mangle]
pub unsafe extern "C" fn tfw_field_axes(f: *const TfwField, out: *mut TfwAxes) -> TfwStatus {
    guard(|| {
        let f = deref(f, "field")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = f.0.axes().into();
        Ok(())
    })
}

/// Copies the `n*n` samples into caller buffers of exactly `len` values.
#[no_mangle]
pub unsafe extern "C" fn tfw_field_copy_out(f: *const TfwField, re: *mut f64, im: *mut f64, len: usize) -> TfwStatus {
    guard(|| write_complex(deref(f, "field")?.0.samples(), re, im, len))
}

#[no_mangle]
pub unsafe extern "C" fn tfw_field_free(f: *mut TfwField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Short-time Fourier transform of `f` with window `g`.
#[no_mangle]
pub unsafe extern "C" fn tfw_stft(f: *const TfwSignal, g: *const TfwSignal, out: *mut *mut TfwField) -> TfwStatus {
    guard(|| put(out, TfwField(stft1(&deref(f, "f")?.0, &deref(g, "g")?.0)?)))
}

/// Cross-Wigner distribution `W(f, g)`.
#[no_mangle]
pub unsafe extern "C" fn tfw_wigner(f: *const TfwSignal, g: *const TfwSignal, out: *mut *mut TfwField) -> TfwStatus {
    guard(|| put(out, TfwField(wigner(&deref(f, "f")?.0, &deref(g, "g")?.0)?)))
}

/// Cross-τ-Wigner distribution, `tau` in [0, 1].
#[no_mangle]
pub unsafe extern "C" fn tfw_tau_wigner(
    f: *const TfwSignal,
    g: *const TfwSignal,
    tau: f64,
    out: *mut *mut TfwField,
) -> TfwStatus {
    guard(|| {
        let tau = TauParam::new(tau)?;
        put(out, TfwField(tau_wigner(&deref(f, "f")?.0, &deref(g, "g")?.0, tau.value())?))
    })
}

/// Weyl operator matrix of a position-frequency symbol.
#[no_mangle]
pub unsafe extern "C" fn tfw_weyl_matrix(symbol: *const TfwField, out: *mut *mut TfwOperator) -> TfwStatus {
    guard(|| put(out, TfwOperator(weyl_matrix(&deref(symbol, "symbol")?.0)?)))
}

/// τ-operator matrix of a position-frequency symbol.
#[no_mangle]
pub unsafe extern "C" fn tfw_tau_matrix(symbol: *const TfwField, tau: f64, out: *mut *mut TfwOperator) -> TfwStatus {
    guard(|| {
        let tau = TauParam::new(tau)?;
        put(out, TfwOperator(tau_matrix(&deref(symbol, "symbol")?.0, tau)?))
    })
}

/// `out = op · f`.
#[no_mangle]
pub unsafe extern "C" fn tfw_operator_apply(
    op: *const TfwOperator,
    f: *const TfwSignal,
    out: *mut *mut TfwSignal,
) -> TfwStatus {
    guard(|| put(out, TfwSignal(apply(&deref(op, "operator")?.0, &deref(f, "f")?.0)?)))
}

/// Matrix size `n`, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn tfw_operator_grid_len(op: *const TfwOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.grid().len())
}

/// Copies the `n*n` row-major entries into caller buffers of exactly `len` values.
#[no_mangle]
pub unsafe extern "C" fn tfw_operator_copy_out(
    op: *const TfwOperator,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> TfwStatus {
    guard(|| write_complex(deref(op, "operator")?.0.entries(), re, im, len))
}

#[no_mangle]
pub unsafe extern "C" fn tfw_operator_free(op: *mut TfwOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Admissibility of `(p, q, r1, r2)`. Exponents are strings such as `"2"`,
/// `"4/3"` or `"inf"`. An inadmissible tuple is not an error: the call
/// succeeds with `*admissible = false` and the reasons in the last-error slot.
#[no_mangle]
pub unsafe extern "C" fn tfw_check_exponents(
    p: *const c_char,
    q: *const c_char,
    r1: *const c_char,
    r2: *const c_char,
    admissible: *mut bool,
) -> TfwStatus {
    let mut reasons = None;
    let status = guard(|| {
        let t = ExponentTuple::new(
            read_exponent(p, "p")?,
            read_exponent(q, "q")?,
            read_exponent(r1, "r1")?,
            read_exponent(r2, "r2")?,
        );
        if admissible.is_null() {
            return Err(null("admissible"));
        }
        let verdict = check_exponents(&t);
        *admissible = verdict.admissible;
        if !verdict.admissible {
            reasons = Some(verdict.summary());
        }
        Ok(())
    });
    if let Some(r) = reasons {
        set_error(r);
    }
    status
}
