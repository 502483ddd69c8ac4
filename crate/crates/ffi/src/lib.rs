//! C ABI over the `detbound` library.
//!
//! Matrices are passed as opaque `DetboundMatrix` handles created by one of
//! the constructors and released with `detbound_matrix_free`. Every fallible
//! call returns a `DetboundStatus`; on failure a message describing the error
//! is kept per thread and can be read with `detbound_last_error`. Strings
//! returned through out-parameters are owned by the caller and must be freed
//! with `detbound_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use detbound::bounds::{complex_bound, gasper_bound, hadamard_row_bound, FormulaTag};
use detbound::extremal::{construct_orthogonal, construct_shifted, verify_characterization};
use detbound::infdet::{koch_bound, InfiniteMatrixSpec};
use detbound::linalg::{det_exact, det_float, parse_matrix, write_matrix};
use detbound::rational::{format_rational, parse_rational, to_f64};
use detbound::search::SearchProblem;
use detbound::{EntryCase, Error, Matrix};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetboundStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidDimension = 4,
    DimensionMismatch = 5,
    Infeasible = 6,
    InvalidParameter = 7,
    SearchSpaceTooLarge = 8,
    DivergentSpec = 9,
    Singular = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetboundCase {
    AlphaSqLtBeta = 0,
    AlphaSqEqBeta = 1,
    AlphaSqGtBeta = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetboundFormula {
    BetaPower = 0,
    AlphaKappa = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetboundVariant {
    ShiftedIdentity = 0,
    OrthogonalBlocks = 1,
}

/// Real-matrix bound. `alpha`, `beta` and `kappa` are rounded to double.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetboundBound {
    pub bound: f64,
    pub beta_power: f64,
    /// Evaluated in every case; it is only a bound when alpha^2 >= beta.
    pub alpha_kappa: f64,
    pub alpha: f64,
    pub beta: f64,
    pub kappa: f64,
    pub case_tag: DetboundCase,
    pub formula_tag: DetboundFormula,
    pub feasible: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetboundComplexBound {
    pub bound: f64,
    pub bound_direct: f64,
    pub bound_swapped: f64,
}

/// Characterization checks. `rowsum_ok` and `colsum_ok` are -1 when the
/// check does not apply, otherwise 0 or 1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetboundVerify {
    pub all_ok: bool,
    pub gram_ok: bool,
    pub det_ok: bool,
    pub rowsum_ok: i32,
    pub colsum_ok: i32,
    pub det: f64,
    pub max_residual: f64,
}

/// Opaque square matrix with exact rational entries.
pub struct DetboundMatrix {
    inner: Matrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DetboundStatus {
    match err {
        Error::Parse { .. } => DetboundStatus::Parse,
        Error::InvalidDimension(_) => DetboundStatus::InvalidDimension,
        Error::DimensionMismatch { .. } => DetboundStatus::DimensionMismatch,
        Error::InfeasiblePair { .. } | Error::NonpositiveBeta(_) => DetboundStatus::Infeasible,
        Error::SearchSpaceTooLarge { .. } => DetboundStatus::SearchSpaceTooLarge,
        Error::DivergentSpec(_) => DetboundStatus::DivergentSpec,
        Error::SingularShiftedIdentity { .. } => DetboundStatus::Singular,
        _ => DetboundStatus::InvalidParameter,
    }
}

struct Failure(DetboundStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DetboundStatus::NullPointer, format!("null pointer passed for {what}"))
}

fn guard<F>(f: F) -> DetboundStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            DetboundStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DetboundStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DetboundStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn matrix_arg<'a>(p: *const DetboundMatrix, what: &str) -> Result<&'a Matrix, Failure> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed(m: Matrix) -> *mut DetboundMatrix {
    Box::into_raw(Box::new(DetboundMatrix { inner: m }))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Message for the most recent failure on this thread, or NULL after a
/// successful call. The pointer stays valid until the next call on the same
/// thread.
#[no_mangle]
pub extern "C" fn detbound_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn detbound_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an n×n matrix from `n*n` row-major doubles.
///
/// # Safety
/// `entries` must point to `n*n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_from_f64(
    n: usize,
    entries: *const f64,
    out: *mut *mut DetboundMatrix,
) -> DetboundStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let count = n
            .checked_mul(n)
            .ok_or_else(|| Failure(DetboundStatus::InvalidDimension, "n*n overflows".into()))?;
        let slice = std::slice::from_raw_parts(entries, count);
        let m = Matrix::from_f64(n, slice)?;
        write_out(out, boxed(m), "out")
    })
}

/// Builds an n×n matrix from `n*n` row-major integers.
///
/// # Safety
/// `entries` must point to `n*n` readable integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_from_i64(
    n: usize,
    entries: *const i64,
    out: *mut *mut DetboundMatrix,
) -> DetboundStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let count = n
            .checked_mul(n)
            .ok_or_else(|| Failure(DetboundStatus::InvalidDimension, "n*n overflows".into()))?;
        let slice = std::slice::from_raw_parts(entries, count);
        let m = Matrix::from_i64(n, slice)?;
        write_out(out, boxed(m), "out")
    })
}

/// Parses the comma-separated matrix text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_parse(
    text: *const c_char,
    out: *mut *mut DetboundMatrix,
) -> DetboundStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let m = parse_matrix(text)?;
        write_out(out, boxed(m), "out")
    })
}

/// # Safety
/// `m` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_free(m: *mut DetboundMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Order of the matrix, or 0 for NULL.
///
/// # Safety
/// `m` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_n(m: *const DetboundMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.n())
}

/// Entry (row, col), zero-based, rounded to double.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_get(
    m: *const DetboundMatrix,
    row: usize,
    col: usize,
    out: *mut f64,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        if row >= m.n() || col >= m.n() {
            return Err(Failure(
                DetboundStatus::InvalidDimension,
                format!("index ({row}, {col}) out of range for n = {}", m.n()),
            ));
        }
        write_out(out, to_f64(m.get(row, col)), "out")
    })
}

/// Matrix in the exact text format. Free the result with
/// `detbound_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_matrix_to_text(
    m: *const DetboundMatrix,
    out: *mut *mut c_char,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        write_out(out, c_string(write_matrix(m)), "out")
    })
}

/// Determinant by partial-pivot LU in double precision.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_det(m: *const DetboundMatrix, out: *mut f64) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        write_out(out, det_float(m), "out")
    })
}

/// Exact determinant as an integer or "p/q" string. Free the result with
/// `detbound_string_free`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_det_exact(
    m: *const DetboundMatrix,
    out: *mut *mut c_char,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        write_out(out, c_string(format_rational(&det_exact(m))), "out")
    })
}

fn case_of(c: EntryCase) -> DetboundCase {
    match c {
        EntryCase::AlphaSqLtBeta => DetboundCase::AlphaSqLtBeta,
        EntryCase::AlphaSqEqBeta => DetboundCase::AlphaSqEqBeta,
        EntryCase::AlphaSqGtBeta => DetboundCase::AlphaSqGtBeta,
    }
}

/// Three-case bound from the entry sum and square sum.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_bound(
    m: *const DetboundMatrix,
    out: *mut DetboundBound,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        let r = gasper_bound(m);
        let value = DetboundBound {
            bound: r.bound,
            beta_power: r.beta_power,
            alpha_kappa: r.alpha_kappa,
            alpha: to_f64(&r.stats.alpha),
            beta: to_f64(&r.stats.beta),
            kappa: to_f64(&r.stats.kappa),
            case_tag: case_of(r.stats.case_tag),
            formula_tag: match r.formula_tag {
                FormulaTag::BetaPower => DetboundFormula::BetaPower,
                FormulaTag::AlphaKappa => DetboundFormula::AlphaKappa,
            },
            feasible: r.feasible,
        };
        write_out(out, value, "out")
    })
}

/// Bound on |det(A + iB)|.
///
/// # Safety
/// `real` and `imag` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_complex_bound(
    real: *const DetboundMatrix,
    imag: *const DetboundMatrix,
    out: *mut DetboundComplexBound,
) -> DetboundStatus {
    guard(|| {
        let a = matrix_arg(real, "real")?;
        let b = matrix_arg(imag, "imag")?;
        let r = complex_bound(a, b)?;
        let value = DetboundComplexBound {
            bound: r.bound,
            bound_direct: r.bound_direct,
            bound_swapped: r.bound_swapped,
        };
        write_out(out, value, "out")
    })
}

/// Product of the row norms.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_hadamard_row_bound(
    m: *const DetboundMatrix,
    out: *mut f64,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        write_out(out, hadamard_row_bound(m), "out")
    })
}

/// Builds an extremal matrix. `alpha` and `beta` use the rational syntax
/// (integer, decimal or "p/q"); `variant` is a `DetboundVariant` value.
/// `claimed_det` may be NULL.
///
/// # Safety
/// `alpha` and `beta` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_construct(
    n: usize,
    alpha: *const c_char,
    beta: *const c_char,
    variant: u32,
    out: *mut *mut DetboundMatrix,
    claimed_det: *mut f64,
) -> DetboundStatus {
    guard(|| {
        let alpha = parse_rational(str_arg(alpha, "alpha")?)?;
        let beta = parse_rational(str_arg(beta, "beta")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let recipe = if variant == DetboundVariant::ShiftedIdentity as u32 {
            construct_shifted(n, &alpha, &beta)?
        } else if variant == DetboundVariant::OrthogonalBlocks as u32 {
            construct_orthogonal(n, &alpha, &beta)?
        } else {
            return Err(Failure(
                DetboundStatus::InvalidParameter,
                format!("unknown variant {variant}"),
            ));
        };
        if !claimed_det.is_null() {
            claimed_det.write(recipe.claimed_det);
        }
        out.write(boxed(recipe.matrix));
        Ok(())
    })
}

/// Checks the necessary conditions for a determinant maximizer.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_verify(
    m: *const DetboundMatrix,
    tol: f64,
    out: *mut DetboundVerify,
) -> DetboundStatus {
    guard(|| {
        let m = matrix_arg(m, "m")?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure(
                DetboundStatus::InvalidParameter,
                format!("tol must be > 0 (got {tol})"),
            ));
        }
        let r = verify_characterization(m, tol);
        let flag = |v: Option<bool>| v.map_or(-1, i32::from);
        let value = DetboundVerify {
            all_ok: r.all_ok(),
            gram_ok: r.gram_ok,
            det_ok: r.det_ok,
            rowsum_ok: flag(r.rowsum_ok),
            colsum_ok: flag(r.colsum_ok),
            det: r.det,
            max_residual: r.max_residual,
        };
        write_out(out, value, "out")
    })
}

/// Exhaustive maximal |det| over arrangements of `len = n*n` integers.
/// `workers = 0` uses every core. `best_matrix` may be NULL.
///
/// # Safety
/// `entries` must point to `len` integers, `best_abs_det` must be writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_search_exhaustive(
    n: usize,
    entries: *const i64,
    len: usize,
    workers: usize,
    best_abs_det: *mut f64,
    best_matrix: *mut *mut DetboundMatrix,
) -> DetboundStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        if best_abs_det.is_null() {
            return Err(null("best_abs_det"));
        }
        let values = std::slice::from_raw_parts(entries, len)
            .iter()
            .map(|&v| detbound::rational::from_int(v))
            .collect();
        let result = SearchProblem::exhaustive(n, values)?.with_workers(workers).run()?;
        best_abs_det.write(result.best_abs_det_f64);
        if !best_matrix.is_null() {
            best_matrix.write(boxed(result.best_matrix));
        }
        Ok(())
    })
}

/// Limit bound for det(I − A) given an infinite-matrix spec in JSON.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn detbound_koch_bound(
    spec_json: *const c_char,
    out: *mut f64,
) -> DetboundStatus {
    guard(|| {
        let spec = InfiniteMatrixSpec::from_json(str_arg(spec_json, "spec_json")?)?;
        write_out(out, koch_bound(&spec)?, "out")
    })
}
