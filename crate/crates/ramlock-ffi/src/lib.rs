//! C ABI over ramlock. Fields and modules are opaque handles owned by the caller and released
//! with the matching `_free` function. Every call returns a `RamlockStatus`; on failure the
//! message is kept per thread and read back with `ramlock_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use ramlock::localfield::towers::fn_tower;
use ramlock::localfield::{field_from_json, standard_field, LocalField};
use ramlock::phimodule::{
    bundled_module, count_points, curated_candidates, cut_out_extension, SolveOptions,
    TorsionPhiModule, Verdict,
};
use ramlock::ramification::pj::budget_from_env;
use ramlock::ramification::{bound_value, break_fn, check_discriminant_bound};
use ramlock::rat::Q;
use ramlock::witt::AbarRing;
use ramlock::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RamlockStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    OutOfRange = 3,
    NotEisenstein = 4,
    Precision = 5,
    NotFound = 6,
    BudgetExceeded = 7,
    Unsupported = 8,
    /// A rational result does not fit in 64-bit numerator and denominator.
    Overflow = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RamlockVerdict {
    UnramifiedRespected = 0,
    Respected = 1,
    Sharp = 2,
    Violated = 3,
}

/// A local field K.
pub struct RamlockField {
    inner: LocalField,
}

/// A torsion phi-module, validated against the absolute index of the field it was made for.
pub struct RamlockModule {
    inner: TorsionPhiModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> RamlockStatus {
    match err {
        Error::Input(_) | Error::BadExponent(_) | Error::BadShape(_) => RamlockStatus::InvalidInput,
        Error::RangeError(_) | Error::TooLarge { .. } => RamlockStatus::OutOfRange,
        Error::NotEisenstein(_) => RamlockStatus::NotEisenstein,
        Error::PrecisionTooLow(_) | Error::PrecisionLoss(_) | Error::PrecisionInsufficient(_) => {
            RamlockStatus::Precision
        }
        Error::NotFound { .. } => RamlockStatus::NotFound,
        Error::BudgetExceeded { .. } => RamlockStatus::BudgetExceeded,
        Error::UnsupportedPresentation(_) => RamlockStatus::Unsupported,
        _ => RamlockStatus::Internal,
    }
}

enum Failure {
    Status(RamlockStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null() -> Failure {
    Failure::Status(RamlockStatus::NullPointer, "null pointer argument".into())
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> RamlockStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RamlockStatus::Ok
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Failure::Lib(err))) => {
            set_error(err.to_string());
            status_of(&err)
        }
        Err(_) => {
            set_error("internal panic".into());
            RamlockStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::Status(RamlockStatus::InvalidInput, "string is not UTF-8".into()))
}

unsafe fn write_fraction(x: &Q, num: *mut i64, den: *mut i64) -> Result<(), Failure> {
    if num.is_null() || den.is_null() {
        return Err(null());
    }
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(a), Some(b)) => {
            *num = a;
            *den = b;
            Ok(())
        }
        _ => Err(Failure::Status(RamlockStatus::Overflow, format!("{x} does not fit in 64 bits"))),
    }
}

unsafe fn field_ref<'a>(f: *const RamlockField) -> Result<&'a LocalField, Failure> {
    f.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn module_ref<'a>(m: *const RamlockModule) -> Result<&'a TorsionPhiModule, Failure> {
    m.as_ref().map(|h| &h.inner).ok_or_else(null)
}

fn options(budget: u64) -> SolveOptions {
    SolveOptions {
        budget: if budget == 0 { budget_from_env() } else { budget },
        ..SolveOptions::default()
    }
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn ramlock_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ramlock_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// K = Q_p(p^(1/e)) with `precision` digits.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn ramlock_field_new(
    p: u64,
    e: u32,
    precision: u32,
    out: *mut *mut RamlockField,
) -> RamlockStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = standard_field(p, e, precision)?;
        *out = Box::into_raw(Box::new(RamlockField { inner }));
        Ok(())
    })
}

/// A field from its JSON presentation.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ramlock_field_from_json(json: *const c_char, out: *mut *mut RamlockField) -> RamlockStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = field_from_json(text(json)?)?;
        *out = Box::into_raw(Box::new(RamlockField { inner }));
        Ok(())
    })
}

/// # Safety
/// `field` must come from a `ramlock_field_*` constructor and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ramlock_field_free(field: *mut RamlockField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Residue characteristic and absolute ramification index.
///
/// # Safety
/// `field` must be a live handle; `p` and `e` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ramlock_field_info(field: *const RamlockField, p: *mut u64, e: *mut u32) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        if p.is_null() || e.is_null() {
            return Err(null());
        }
        *p = k.p();
        *e = k.e();
        Ok(())
    })
}

/// u(K, r, n) as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ramlock_bound(p: u64, e: u32, r: u32, n: u32, num: *mut i64, den: *mut i64) -> RamlockStatus {
    guard(|| write_fraction(&bound_value(p, e, r, n)?, num, den))
}

/// Upper break of F_n/K, with whether it equals 1 + e(n + 1/(p-1)).
///
/// # Safety
/// `field` must be a live handle; the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn ramlock_break_fn(
    field: *const RamlockField,
    n: u32,
    num: *mut i64,
    den: *mut i64,
    matches_closed_form: *mut bool,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        if matches_closed_form.is_null() {
            return Err(null());
        }
        let b = break_fn(k, n)?;
        write_fraction(&b.computed, num, den)?;
        *matches_closed_form = b.matches();
        Ok(())
    })
}

/// Whether the different of F_n/K lies below u(K, r, n); for r = 0, whether it vanishes.
///
/// # Safety
/// `field` must be a live handle and `holds` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ramlock_check_discriminant(
    field: *const RamlockField,
    r: u32,
    n: u32,
    holds: *mut bool,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        if holds.is_null() {
            return Err(null());
        }
        let tower = fn_tower(k, n)?;
        *holds = check_discriminant_bound(&tower.field, k, r, n)?;
        Ok(())
    })
}

/// One of the shipped example modules, validated for `field`.
///
/// # Safety
/// `name` must be a NUL-terminated string, `field` a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ramlock_module_bundled(
    field: *const RamlockField,
    name: *const c_char,
    out: *mut *mut RamlockModule,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        if out.is_null() {
            return Err(null());
        }
        let name = text(name)?;
        let inner = bundled_module(name, k.e())?.with_name(name);
        inner.check_for_prime(k.p())?;
        *out = Box::into_raw(Box::new(RamlockModule { inner }));
        Ok(())
    })
}

/// A module from its JSON description, validated for `field`.
///
/// # Safety
/// `json` must be a NUL-terminated string, `field` a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ramlock_module_from_json(
    field: *const RamlockField,
    json: *const c_char,
    out: *mut *mut RamlockModule,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        if out.is_null() {
            return Err(null());
        }
        let inner = TorsionPhiModule::parse_json(text(json)?, k.e())?;
        inner.check_for_prime(k.p())?;
        *out = Box::into_raw(Box::new(RamlockModule { inner }));
        Ok(())
    })
}

/// # Safety
/// `module` must come from a `ramlock_module_*` constructor and not be freed twice. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ramlock_module_free(module: *mut RamlockModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Number of points of `module` over F_n (`candidate` 0) or its unramified quadratic
/// extension (`candidate` 1). A zero budget means the environment default.
///
/// # Safety
/// Handles must be live and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ramlock_count_points(
    field: *const RamlockField,
    module: *const RamlockModule,
    candidate: u32,
    budget: u64,
    count: *mut u64,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        let m = module_ref(module)?;
        if count.is_null() {
            return Err(null());
        }
        let (tower, cands) = curated_candidates(k, m.n() as u32)?;
        let f = cands.get(candidate as usize).ok_or_else(|| {
            Failure::Status(RamlockStatus::OutOfRange, format!("no candidate {candidate}"))
        })?;
        let ring = AbarRing::from_tower(&tower, f, m.r())?;
        *count = count_points(m, &ring, &options(budget))? as u64;
        Ok(())
    })
}

/// Locates the first candidate with all p^(nd) points and compares its break with u(K, r, n).
///
/// # Safety
/// Handles must be live and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn ramlock_cut_out(
    field: *const RamlockField,
    module: *const RamlockModule,
    budget: u64,
    candidate: *mut u32,
    break_num: *mut i64,
    break_den: *mut i64,
    verdict: *mut RamlockVerdict,
) -> RamlockStatus {
    guard(|| {
        let k = field_ref(field)?;
        let m = module_ref(module)?;
        if candidate.is_null() || verdict.is_null() {
            return Err(null());
        }
        let (tower, cands) = curated_candidates(k, m.n() as u32)?;
        let cut = cut_out_extension(m, &tower, &cands, &options(budget))?;
        write_fraction(&cut.datum.u, break_num, break_den)?;
        *candidate = cut.index as u32;
        *verdict = match cut.verdict {
            Verdict::UnramifiedRespected => RamlockVerdict::UnramifiedRespected,
            Verdict::Respected => RamlockVerdict::Respected,
            Verdict::Sharp => RamlockVerdict::Sharp,
            Verdict::Violated => RamlockVerdict::Violated,
        };
        Ok(())
    })
}
