//! C ABI for `furstenberg`.
//!
//! Integers cross the boundary as decimal strings so nothing is truncated.
//! Every call returns an [`FstStatus`]; on failure [`fst_last_error`] holds a
//! message for the calling thread. Strings handed out must be released with
//! [`fst_string_free`], handles with their matching `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use furstenberg::separation::{self, SeparationCertificate};
use furstenberg::{Error, ProgressionUnion, ResidueClass};
use num_bigint::BigInt;

/// Result code of every exported call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FstStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    InvalidModulus = 5,
    EqualPoints = 6,
    NotPrime = 7,
    NotDisjoint = 8,
    EmptyInput = 9,
    CapExceeded = 10,
    ModulusBlowup = 11,
    Panic = 12,
}

/// Opaque residue class `r mod m`.
pub struct FstClass(ResidueClass);

/// Opaque finite union of residue classes, kept canonical.
pub struct FstUnion(ProgressionUnion);

/// Opaque separation certificate.
pub struct FstCertificate(SeparationCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(FstStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::CapExceeded { .. } => FstStatus::CapExceeded,
            Error::ModulusBlowup { .. } => FstStatus::ModulusBlowup,
            Error::InvalidModulus(_) => FstStatus::InvalidModulus,
            Error::EqualPoints(_) => FstStatus::EqualPoints,
            Error::NotPrime(_) => FstStatus::NotPrime,
            Error::NotDisjoint(_) => FstStatus::NotDisjoint,
            Error::EmptyInput => FstStatus::EmptyInput,
            Error::Parse(_) => FstStatus::Parse,
            Error::InvalidRadius(_) | Error::PreconditionFailed { .. } | Error::InvalidArgument(_) => {
                FstStatus::InvalidArgument
            }
        };
        Failure(status, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(FstStatus::Parse, e.to_string())
    }
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FstStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FstStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FstStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(FstStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FstStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn integer(p: *const c_char, what: &str) -> Result<BigInt, Failure> {
    Ok(furstenberg::arith::parse_int(text(p, what)?)?)
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let s = CString::new(s).map_err(|e| Failure(FstStatus::InvalidArgument, e.to_string()))?;
    put(out, s.into_raw())
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(value)))
}

// Accepts a JSON array whose items are integers or decimal strings.
unsafe fn integer_list(p: *const c_char, what: &str) -> Result<Vec<BigInt>, Failure> {
    let items: Vec<serde_json::Value> = serde_json::from_str(text(p, what)?)?;
    items
        .iter()
        .map(|v| match v {
            serde_json::Value::String(s) => Ok(furstenberg::arith::parse_int(s)?),
            serde_json::Value::Number(n) => Ok(furstenberg::arith::parse_int(&n.to_string())?),
            other => Err(Failure(FstStatus::Parse, format!("{what}: {other} is not an integer"))),
        })
        .collect()
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library and valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fst_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned through an `out` parameter. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fst_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes ‖n‖ as `"0"`, `"1"` or `"1/K"`.
///
/// # Safety
/// `n` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_norm(n: *const c_char, out: *mut *mut c_char) -> FstStatus {
    guard(|| put_string(out, furstenberg::norm(&integer(n, "n")?).to_string()))
}

/// Writes d(m, n) in the same format as [`fst_norm`].
///
/// # Safety
/// `m` and `n` must be valid C strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_dist(m: *const c_char, n: *const c_char, out: *mut *mut c_char) -> FstStatus {
    guard(|| put_string(out, furstenberg::dist(&integer(m, "m")?, &integer(n, "n")?).to_string()))
}

/// Writes the Ferry norm of `n` as `"num/2^exp"`, or `"0"`. A `cap` of 0
/// selects the default.
///
/// # Safety
/// `n` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_ferry_norm(n: *const c_char, cap: u64, out: *mut *mut c_char) -> FstStatus {
    guard(|| {
        let cap = if cap == 0 {
            furstenberg::norms::FERRY_DEFAULT_CAP
        } else {
            cap
        };
        put_string(
            out,
            furstenberg::norms::ferry_norm_capped(&integer(n, "n")?, cap)?.to_string(),
        )
    })
}

/// Creates the class `residue mod modulus`.
///
/// # Safety
/// Both strings must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_class_new(
    residue: *const c_char,
    modulus: *const c_char,
    out: *mut *mut FstClass,
) -> FstStatus {
    guard(|| {
        let class = ResidueClass::new(integer(residue, "residue")?, integer(modulus, "modulus")?)?;
        put_box(out, FstClass(class))
    })
}

/// Writes the class as `"r mod m"`.
///
/// # Safety
/// `class` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_class_to_string(class: *const FstClass, out: *mut *mut c_char) -> FstStatus {
    guard(|| put_string(out, handle(class, "class")?.0.to_string()))
}

/// # Safety
/// `class` must be a live handle, `n` a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_class_contains(class: *const FstClass, n: *const c_char, out: *mut bool) -> FstStatus {
    guard(|| put(out, handle(class, "class")?.0.contains(&integer(n, "n")?)))
}

/// Intersects two classes. An empty intersection writes null and returns OK.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_class_intersect(
    x: *const FstClass,
    y: *const FstClass,
    out: *mut *mut FstClass,
) -> FstStatus {
    guard(|| {
        let meet = furstenberg::intersect_classes(&handle(x, "x")?.0, &handle(y, "y")?.0);
        put(
            out,
            meet.map_or(ptr::null_mut(), |c| Box::into_raw(Box::new(FstClass(c)))),
        )
    })
}

/// # Safety
/// `class` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fst_class_free(class: *mut FstClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Parses a union from `{"classes": [{"residue", "modulus"}, ...]}`.
/// The result is canonicalized.
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_from_json(json: *const c_char, out: *mut *mut FstUnion) -> FstStatus {
    guard(|| {
        let union: ProgressionUnion = serde_json::from_str(text(json, "json")?)?;
        put_box(out, FstUnion(union))
    })
}

/// Wraps a single class as a union. The class handle stays owned by the caller.
///
/// # Safety
/// `class` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_from_class(class: *const FstClass, out: *mut *mut FstUnion) -> FstStatus {
    guard(|| {
        put_box(
            out,
            FstUnion(ProgressionUnion::from_class(handle(class, "class")?.0.clone())),
        )
    })
}

/// Writes the canonical form as JSON.
///
/// # Safety
/// `union` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_to_json(union: *const FstUnion, out: *mut *mut c_char) -> FstStatus {
    guard(|| put_string(out, serde_json::to_string(&handle(union, "union")?.0)?))
}

/// # Safety
/// `union` must be a live handle, `n` a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_contains(union: *const FstUnion, n: *const c_char, out: *mut bool) -> FstStatus {
    guard(|| put(out, handle(union, "union")?.0.contains(&integer(n, "n")?)))
}

/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_union(x: *const FstUnion, y: *const FstUnion, out: *mut *mut FstUnion) -> FstStatus {
    guard(|| put_box(out, FstUnion(handle(x, "x")?.0.union(&handle(y, "y")?.0)?)))
}

/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_intersect(
    x: *const FstUnion,
    y: *const FstUnion,
    out: *mut *mut FstUnion,
) -> FstStatus {
    guard(|| put_box(out, FstUnion(handle(x, "x")?.0.intersect(&handle(y, "y")?.0)?)))
}

/// # Safety
/// `union` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_union_complement(union: *const FstUnion, out: *mut *mut FstUnion) -> FstStatus {
    guard(|| put_box(out, FstUnion(handle(union, "union")?.0.complement()?)))
}

/// # Safety
/// `union` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fst_union_free(union: *mut FstUnion) {
    if !union.is_null() {
        drop(Box::from_raw(union));
    }
}

/// Separates two disjoint finite prime sets, each a JSON array of integers
/// or decimal strings, with the lcm-tower construction.
///
/// # Safety
/// Both strings must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_separate(a: *const c_char, b: *const c_char, out: *mut *mut FstCertificate) -> FstStatus {
    guard(|| {
        let cert = separation::separate(&integer_list(a, "a")?, &integer_list(b, "b")?)?;
        put_box(out, FstCertificate(cert))
    })
}

/// Like [`fst_separate`] but searches for small moduli up to `search_bound`.
///
/// # Safety
/// Both strings must be valid and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_compact_separate(
    a: *const c_char,
    b: *const c_char,
    search_bound: u64,
    out: *mut *mut FstCertificate,
) -> FstStatus {
    guard(|| {
        let cert = separation::compact_separate(&integer_list(a, "a")?, &integer_list(b, "b")?, search_bound)?;
        put_box(out, FstCertificate(cert))
    })
}

/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_certificate_from_json(json: *const c_char, out: *mut *mut FstCertificate) -> FstStatus {
    guard(|| {
        let cert: SeparationCertificate = serde_json::from_str(text(json, "json")?)?;
        put_box(out, FstCertificate(cert))
    })
}

/// # Safety
/// `cert` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fst_certificate_to_json(cert: *const FstCertificate, out: *mut *mut c_char) -> FstStatus {
    guard(|| put_string(out, serde_json::to_string(&handle(cert, "cert")?.0)?))
}

/// Checks a certificate over `[-window, window]`. Writes whether it holds to
/// `valid` and, if `verdict` is non-null, the verdict as JSON.
///
/// # Safety
/// `cert` must be a live handle, `valid` writable, `verdict` null or writable.
#[no_mangle]
pub unsafe extern "C" fn fst_certificate_verify(
    cert: *const FstCertificate,
    window: u64,
    valid: *mut bool,
    verdict: *mut *mut c_char,
) -> FstStatus {
    guard(|| {
        let v = separation::verify(&handle(cert, "cert")?.0, window);
        put(valid, v.is_valid())?;
        if !verdict.is_null() {
            put_string(verdict, serde_json::to_string(&v)?)?;
        }
        Ok(())
    })
}

/// # Safety
/// `cert` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fst_certificate_free(cert: *mut FstCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}
