//! C interface to `brauer-core`.
//!
//! Objects are handed out as opaque pointers and released with the matching
//! `*_free` function. Every fallible call returns a [`BrStatus`]; on failure
//! `br_last_error_message` describes the error until the next call on the
//! same thread. Strings returned through `char **` out-parameters are owned by
//! the caller and released with [`br_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use brauer_core::algebra::{evaluate_word, multiply, BrauerElement, GeneratorWord};
use brauer_core::centralizer::{verify_isomorphism, RankStrategy, VerificationReport, VerifyOptions, DEFAULT_BUDGET};
use brauer_core::oriented::{hom_dim, OrientationSeq};
use brauer_core::scalar::{self, Scalar};
use brauer_core::superalgebra::{Mode, Params};
use brauer_core::Error;

/// Result codes. `BR_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    DimensionMismatch = 4,
    OutOfRange = 5,
    LimitExceeded = 6,
    BudgetExceeded = 7,
    NonEquivariant = 8,
    Math = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrMode {
    Even = 0,
    Odd = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrStrategy {
    Auto = 0,
    Exact = 1,
    TwoPrimes = 2,
}

/// An element of a Brauer algebra together with its parameter `δ`.
pub struct BrElement {
    inner: BrauerElement,
    delta: Scalar,
}

/// Outcome of comparing the Brauer image with the `osp` commutant.
pub struct BrReport {
    inner: VerificationReport,
}

/// Plain-data view of a [`BrReport`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BrReportSummary {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub brauer_dim: usize,
    pub image_rank: usize,
    pub commutant_dim: usize,
    pub commutant_even: usize,
    pub commutant_odd: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
    pub hypotheses_satisfied: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(e: &Error) -> BrStatus {
    match e {
        Error::Parse(_) => BrStatus::Parse,
        Error::DimensionMismatch(_) | Error::IncompatibleSequences(_) | Error::ModeMismatch(_) => {
            BrStatus::DimensionMismatch
        }
        Error::IndexOutOfRange { .. } => BrStatus::OutOfRange,
        Error::LimitExceeded { .. } => BrStatus::LimitExceeded,
        Error::BudgetExceeded(_) => BrStatus::BudgetExceeded,
        Error::NonEquivariant(_) => BrStatus::NonEquivariant,
        _ => BrStatus::Math,
    }
}

struct Failure(BrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BrStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(BrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(BrStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn reference<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(BrStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BrStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(BrStatus::NullPointer, "output pointer is null".into()));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

/// Message for the most recent failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn br_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn br_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn br_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates a word such as `"s1 e2"` in `Br_d(δ)`; `delta` is a rational like `"-1/2"`.
///
/// # Safety
/// `word` and `delta` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_element_from_word(
    word: *const c_char,
    d: usize,
    delta: *const c_char,
    out: *mut *mut BrElement,
) -> BrStatus {
    guard(|| {
        let word: GeneratorWord = text(word, "word")?.parse()?;
        let delta = scalar::parse(text(delta, "delta")?)?;
        if word.max_index() >= d.max(1) {
            return Err(Failure(
                BrStatus::OutOfRange,
                format!("word {word} needs at least {} strands", word.max_index() + 1),
            ));
        }
        let inner = evaluate_word(&word, d, &delta)?;
        write_handle(out, BrElement { inner, delta })
    })
}

/// `x·y` in the algebra of `x`; both factors must share `d` and `δ`.
///
/// # Safety
/// `x` and `y` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_element_multiply(
    x: *const BrElement,
    y: *const BrElement,
    out: *mut *mut BrElement,
) -> BrStatus {
    guard(|| {
        let (x, y) = (reference(x, "x")?, reference(y, "y")?);
        if x.delta != y.delta {
            return Err(Failure(BrStatus::DimensionMismatch, "factors have different delta".into()));
        }
        let inner = multiply(&x.inner, &y.inner, &x.delta)?;
        write_handle(out, BrElement { inner, delta: x.delta.clone() })
    })
}

/// Number of diagrams with nonzero coefficient.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_element_term_count(x: *const BrElement, out: *mut usize) -> BrStatus {
    guard(|| write_out(out, reference(x, "x")?.inner.terms().len()))
}

/// Text form, one `coefficient * diagram` per line, or `0`.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_element_to_string(x: *const BrElement, out: *mut *mut c_char) -> BrStatus {
    guard(|| write_out(out, owned_string(reference(x, "x")?.inner.to_string())))
}

/// JSON object from diagram literals to `"p/q"` strings.
///
/// # Safety
/// `x` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_element_to_json(x: *const BrElement, out: *mut *mut c_char) -> BrStatus {
    guard(|| write_out(out, owned_string(reference(x, "x")?.inner.to_json().to_string())))
}

/// # Safety
/// `x` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn br_element_free(x: *mut BrElement) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Number of oriented diagrams from `s` to `t`, sequences over `^`, `v`, `o`.
///
/// # Safety
/// `s` and `t` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_hom_dim(s: *const c_char, t: *const c_char, out: *mut usize) -> BrStatus {
    guard(|| {
        let s: OrientationSeq = text(s, "s")?.parse()?;
        let t: OrientationSeq = text(t, "t")?.parse()?;
        write_out(out, hom_dim(&s, &t))
    })
}

/// Compares the image of `Br_d(δ)` on `V^{⊗d}` with the `osp` commutant.
/// A `budget` of zero selects the default cap on `dim V^{⊗d}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn br_verify(
    m: usize,
    n: usize,
    mode: BrMode,
    d: usize,
    strategy: BrStrategy,
    seed: u64,
    budget: usize,
    out: *mut *mut BrReport,
) -> BrStatus {
    guard(|| {
        let mode = match mode {
            BrMode::Even => Mode::Even,
            BrMode::Odd => Mode::Odd,
        };
        if m == 0 && n == 0 && mode == Mode::Even {
            return Err(Failure(BrStatus::DimensionMismatch, "m = n = 0 in even mode gives the zero space".into()));
        }
        let strategy = match strategy {
            BrStrategy::Auto => RankStrategy::Auto,
            BrStrategy::Exact => RankStrategy::Exact,
            BrStrategy::TwoPrimes => RankStrategy::TwoPrimes,
        };
        let budget = if budget == 0 { DEFAULT_BUDGET } else { budget };
        let inner = verify_isomorphism(&Params::new(m, n, mode), d, &VerifyOptions { strategy, seed, budget })?;
        write_handle(out, BrReport { inner })
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_report_summary(r: *const BrReport, out: *mut BrReportSummary) -> BrStatus {
    guard(|| {
        let r = &reference(r, "report")?.inner;
        write_out(
            out,
            BrReportSummary {
                m: r.m,
                n: r.n,
                d: r.d,
                brauer_dim: r.brauer_dim,
                image_rank: r.image_rank,
                commutant_dim: r.commutant_dim,
                commutant_even: r.parity_split.even,
                commutant_odd: r.parity_split.odd,
                injective: r.injective,
                surjective: r.surjective,
                iso: r.iso,
                hypotheses_satisfied: r.hypotheses_satisfied,
            },
        )
    })
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn br_report_to_json(r: *const BrReport, out: *mut *mut c_char) -> BrStatus {
    guard(|| write_out(out, owned_string(reference(r, "report")?.inner.to_json())))
}

/// # Safety
/// `r` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn br_report_free(r: *mut BrReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
