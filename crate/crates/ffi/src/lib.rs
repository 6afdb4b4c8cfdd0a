//! C interface to `arbor`.
//!
//! Maps cross the boundary as opaque handles. Every function returns an
//! [`ArborStatus`]; on failure `arbor_last_error_message` describes the most
//! recent error on the calling thread. Strings returned by the library must be
//! released with `arbor_string_free`, handles with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use arbor::apps::{count_proper_trees, TreeFilter};
use arbor::commseries::{
    compose_direct, compose_fdb, fern_nilpotency_check, invert_general, invert_identity_linear,
    phi_involution, FernPath, GeneralPath, InversionPath,
};
use arbor::freeseries::{free_compose_direct, free_invert, free_invert_general};
use arbor::{CommMap, Error, FreeMap, Limits};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArborStatus {
    Ok = 0,
    InvalidArgument = 1,
    DimensionMismatch = 2,
    NonzeroConstantTerm = 3,
    NonIdentityLinearTerm = 4,
    NotInvertible = 5,
    MissingWeight = 6,
    ResourceLimit = 7,
    ParseError = 8,
    NullPointer = 9,
    Panic = 10,
}

/// Inversion route for `arbor_comm_invert` and `arbor_free_invert`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArborInvertPath {
    /// Identity linear term, explicit tree sums.
    Tree = 0,
    /// Identity linear term, memoized recursion.
    Recursive = 1,
    /// Invertible linear term, alternating tree sums.
    Alternating = 2,
    /// Invertible linear term, reduction to the identity case.
    Reduction = 3,
}

/// Opaque commutative map.
pub struct ArborCommMap(CommMap);

/// Opaque free map.
pub struct ArborFreeMap(FreeMap);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ArborStatus {
    match e {
        Error::InvalidArgument(_) => ArborStatus::InvalidArgument,
        Error::DimensionMismatch { .. } => ArborStatus::DimensionMismatch,
        Error::NonzeroConstantTerm { .. } => ArborStatus::NonzeroConstantTerm,
        Error::NonIdentityLinearTerm => ArborStatus::NonIdentityLinearTerm,
        Error::NotInvertible => ArborStatus::NotInvertible,
        Error::MissingWeight { .. } => ArborStatus::MissingWeight,
        Error::ResourceLimit { .. } => ArborStatus::ResourceLimit,
        Error::Parse(_) => ArborStatus::ParseError,
    }
}

enum Fail {
    Engine(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Engine(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ArborStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ArborStatus::Ok,
        Ok(Err(Fail::Engine(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            ArborStatus::NullPointer
        }
        Err(_) => {
            set_error("internal panic");
            ArborStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null("json"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Engine(Error::Parse("input is not valid UTF-8".into())))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior NUL")
        .into_raw()
}

/// Message for the last failure on this thread; empty if none. Owned by the
/// library and valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn arbor_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arbor_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a commutative map.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_map_from_json(
    json: *const c_char,
    out: *mut *mut ArborCommMap,
) -> ArborStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let map = CommMap::from_json(read_str(json)?)?;
        *out = Box::into_raw(Box::new(ArborCommMap(map)));
        Ok(())
    })
}

/// Serializes a commutative map; free the result with `arbor_string_free`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_map_to_json(
    map: *const ArborCommMap,
    out: *mut *mut c_char,
) -> ArborStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = to_c_string(borrow(map, "map")?.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `map` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_map_free(map: *mut ArborCommMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

unsafe fn emit_comm(out: *mut *mut ArborCommMap, map: CommMap) -> Result<(), Fail> {
    *out_ptr(out, "out")? = Box::into_raw(Box::new(ArborCommMap(map)));
    Ok(())
}

/// `F ∘ G` by substitution, or by tree sums when `fdb` is nonzero.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_compose(
    f: *const ArborCommMap,
    g: *const ArborCommMap,
    fdb: bool,
    out: *mut *mut ArborCommMap,
) -> ArborStatus {
    guard(|| {
        let (f, g) = (&borrow(f, "f")?.0, &borrow(g, "g")?.0);
        let h = if fdb {
            compose_fdb(&[f.clone(), g.clone()], &Limits::from_env())?
        } else {
            compose_direct(f, g)?
        };
        emit_comm(out, h)
    })
}

/// Compositional inverse.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_invert(
    f: *const ArborCommMap,
    path: ArborInvertPath,
    out: *mut *mut ArborCommMap,
) -> ArborStatus {
    guard(|| {
        let f = &borrow(f, "f")?.0;
        let limits = Limits::from_env();
        let g = match path {
            ArborInvertPath::Tree => invert_identity_linear(f, InversionPath::TreeSum, &limits)?,
            ArborInvertPath::Recursive => {
                invert_identity_linear(f, InversionPath::Recursive, &limits)?
            }
            ArborInvertPath::Alternating => invert_general(f, GeneralPath::Alternating, &limits)?,
            ArborInvertPath::Reduction => invert_general(f, GeneralPath::Reduction, &limits)?,
        };
        emit_comm(out, g)
    })
}

/// Nonlinear coefficients of the inverse of `X - H`, negated.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_comm_phi(
    h: *const ArborCommMap,
    out: *mut *mut ArborCommMap,
) -> ArborStatus {
    guard(|| {
        let p = phi_involution(
            &borrow(h, "h")?.0,
            InversionPath::Recursive,
            &Limits::from_env(),
        )?;
        emit_comm(out, p)
    })
}

/// Whether `J(H)^m` vanishes, checked through degree `bound`.
///
/// # Safety
/// `h` must be a live handle; `nilpotent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_fern_check(
    h: *const ArborCommMap,
    m: usize,
    bound: usize,
    use_fern_sums: bool,
    nilpotent: *mut bool,
) -> ArborStatus {
    guard(|| {
        let path = if use_fern_sums {
            FernPath::FernSum
        } else {
            FernPath::MatrixPower
        };
        let v = fern_nilpotency_check(&borrow(h, "h")?.0, m, path, bound, &Limits::from_env())?;
        *out_ptr(nilpotent, "nilpotent")? = v.nilpotent;
        Ok(())
    })
}

/// Parses a free map.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_free_map_from_json(
    json: *const c_char,
    out: *mut *mut ArborFreeMap,
) -> ArborStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let map = FreeMap::from_json(read_str(json)?)?;
        *out = Box::into_raw(Box::new(ArborFreeMap(map)));
        Ok(())
    })
}

/// Serializes a free map; free the result with `arbor_string_free`.
///
/// # Safety
/// `map` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_free_map_to_json(
    map: *const ArborFreeMap,
    out: *mut *mut c_char,
) -> ArborStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = to_c_string(borrow(map, "map")?.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `map` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arbor_free_map_free(map: *mut ArborFreeMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

unsafe fn emit_free(out: *mut *mut ArborFreeMap, map: FreeMap) -> Result<(), Fail> {
    *out_ptr(out, "out")? = Box::into_raw(Box::new(ArborFreeMap(map)));
    Ok(())
}

/// Free composition `F ∘ G` by substitution.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_free_compose(
    f: *const ArborFreeMap,
    g: *const ArborFreeMap,
    out: *mut *mut ArborFreeMap,
) -> ArborStatus {
    guard(|| {
        let h = free_compose_direct(&borrow(f, "f")?.0, &borrow(g, "g")?.0)?;
        emit_free(out, h)
    })
}

/// Free compositional inverse.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_free_invert(
    f: *const ArborFreeMap,
    path: ArborInvertPath,
    out: *mut *mut ArborFreeMap,
) -> ArborStatus {
    guard(|| {
        let f = &borrow(f, "f")?.0;
        let limits = Limits::from_env();
        let g = match path {
            ArborInvertPath::Tree => free_invert(f, InversionPath::TreeSum, &limits)?,
            ArborInvertPath::Recursive => free_invert(f, InversionPath::Recursive, &limits)?,
            ArborInvertPath::Alternating => {
                free_invert_general(f, GeneralPath::Alternating, &limits)?
            }
            ArborInvertPath::Reduction => free_invert_general(f, GeneralPath::Reduction, &limits)?,
        };
        emit_free(out, g)
    })
}

/// Number of proper trees on `k` labelled leaves (even outdegrees only when
/// `even` is set). Fails if the series and enumeration counts disagree or the
/// count does not fit.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arbor_count_proper_trees(
    k: usize,
    even: bool,
    out: *mut u64,
) -> ArborStatus {
    guard(|| {
        let filter = if even {
            TreeFilter::EvenOutdegreesOnly
        } else {
            TreeFilter::All
        };
        let c = count_proper_trees(k, filter, &Limits::from_env())?;
        if !c.agree() {
            return Err(
                Error::InvalidArgument("series and enumeration counts disagree".into()).into(),
            );
        }
        let n = u64::try_from(&c.by_series)
            .map_err(|_| Error::InvalidArgument("count does not fit in 64 bits".into()))?;
        *out_ptr(out, "out")? = n;
        Ok(())
    })
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn arbor_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
