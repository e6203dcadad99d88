//! C interface to `crg`.
//!
//! Groups and Krammer models are opaque handles created by `*_new` and
//! released by `*_free`. Every fallible call returns a `CrgStatus`; on failure
//! `crg_last_error` describes the cause for the calling thread. Strings handed
//! out by the library are released with `crg_string_free`.

use crg::cli::{run_suite, Suite, VerifyOptions};
use crg::form::discriminant;
use crg::groups::ReflectionGroupData;
use crg::krammer::{build_krammer, check_braid_relations, cubic_specialization_check, KrammerModel};
use crg::spec::{parse_group_in, GroupSpec};
use crg::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    OutOfRange = 5,
    Computation = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CrgSuite {
    Core = 0,
    Spectral = 1,
    Tensor = 2,
    Parabolic = 3,
    Dihedral = 4,
    Krammer = 5,
    All = 6,
}

/// A built reflection group.
pub struct CrgGroup {
    spec: GroupSpec,
    data: ReflectionGroupData,
}

/// The type-A Krammer matrices on `n` strands.
pub struct CrgKrammer {
    model: KrammerModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> CrgStatus {
    match e {
        Error::Parse { .. } => CrgStatus::Parse,
        Error::UnsupportedSeries { .. }
        | Error::InvalidSeries(_)
        | Error::UnsupportedType(_)
        | Error::NoGeneratorData(_)
        | Error::EvenDihedral(_)
        | Error::TooFewStrands(_) => CrgStatus::Unsupported,
        Error::IndexOutOfRange { .. } | Error::DiagonalAlpha(_) => CrgStatus::OutOfRange,
        _ => CrgStatus::Computation,
    }
}

fn fail(e: Error) -> CrgStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> CrgStatus) -> CrgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            CrgStatus::Panic
        }
    }
}

fn write_string(text: String, out: *mut *mut c_char) -> CrgStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CrgStatus::Ok
        }
        Err(_) => {
            set_error("string contains a NUL byte");
            CrgStatus::Computation
        }
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            set_error(concat!("null argument: ", stringify!($p)));
            return CrgStatus::NullArgument;
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library and valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn crg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn crg_status_message(status: CrgStatus) -> *const c_char {
    let s: &'static CStr = match status {
        CrgStatus::Ok => c"ok",
        CrgStatus::NullArgument => c"null argument",
        CrgStatus::InvalidUtf8 => c"invalid UTF-8",
        CrgStatus::Parse => c"parse error",
        CrgStatus::Unsupported => c"unsupported group or parameter",
        CrgStatus::OutOfRange => c"index out of range",
        CrgStatus::Computation => c"computation failed",
        CrgStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Parses and builds a group such as `G(3,3,4)`, `E6` or `G24`. Generator data
/// is read from `data_dir` when it is not NULL.
///
/// # Safety
/// `name` and `data_dir` must be NUL-terminated strings or NULL; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn crg_group_new(name: *const c_char, data_dir: *const c_char, out: *mut *mut CrgGroup) -> CrgStatus {
    non_null!(name, out);
    guard(|| {
        let text = match CStr::from_ptr(name).to_str() {
            Ok(t) => t,
            Err(_) => {
                set_error("group name is not UTF-8");
                return CrgStatus::InvalidUtf8;
            }
        };
        let dir = if data_dir.is_null() {
            None
        } else {
            match CStr::from_ptr(data_dir).to_str() {
                Ok(d) => Some(PathBuf::from(d)),
                Err(_) => {
                    set_error("data directory is not UTF-8");
                    return CrgStatus::InvalidUtf8;
                }
            }
        };
        let built = parse_group_in(text, dir.as_deref()).and_then(|s| Ok((s, s.build(dir.as_deref())?)));
        match built {
            Ok((spec, data)) => {
                *out = Box::into_raw(Box::new(CrgGroup { spec, data }));
                CrgStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `group` must come from `crg_group_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crg_group_free(group: *mut CrgGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Canonical name of the group, released with `crg_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_group_name(group: *const CrgGroup, out: *mut *mut c_char) -> CrgStatus {
    non_null!(group, out);
    guard(|| write_string((*group).spec.to_string(), out))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_group_reflection_count(group: *const CrgGroup, out: *mut usize) -> CrgStatus {
    non_null!(group, out);
    *out = (*group).data.len();
    CrgStatus::Ok
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_group_class_count(group: *const CrgGroup, out: *mut usize) -> CrgStatus {
    non_null!(group, out);
    *out = (*group).data.classes.len();
    CrgStatus::Ok
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_group_class_size(group: *const CrgGroup, class_index: usize, out: *mut usize) -> CrgStatus {
    non_null!(group, out);
    let group = &*group;
    match group.data.classes.get(class_index) {
        Some(c) => {
            *out = c.len();
            CrgStatus::Ok
        }
        None => fail(Error::IndexOutOfRange {
            index: class_index,
            size: group.data.classes.len(),
        }),
    }
}

/// `alpha(s, u)`: the number of reflections conjugating `u` to `s`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_group_alpha(group: *const CrgGroup, s: usize, u: usize, out: *mut u32) -> CrgStatus {
    non_null!(group, out);
    match (*group).data.alpha(s, u) {
        Ok(a) => {
            *out = a;
            CrgStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Factored discriminant of one class as JSON
/// (`{"factors":[[root,mult],...],"remainder":[...],"sign":s}`).
///
/// # Safety
/// Pointers must be valid; the result is released with `crg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn crg_discriminant_json(group: *const CrgGroup, class_index: usize, out: *mut *mut c_char) -> CrgStatus {
    non_null!(group, out);
    guard(|| match discriminant(&(*group).data, class_index) {
        Ok(d) => write_string(d.to_json().to_string(), out),
        Err(e) => fail(e),
    })
}

/// Factored discriminant of one class in text form, e.g. `-(m-9)m^8`.
///
/// # Safety
/// Pointers must be valid; the result is released with `crg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn crg_discriminant_text(group: *const CrgGroup, class_index: usize, out: *mut *mut c_char) -> CrgStatus {
    non_null!(group, out);
    guard(|| match discriminant(&(*group).data, class_index) {
        Ok(d) => write_string(d.to_string(), out),
        Err(e) => fail(e),
    })
}

/// Runs a verification suite with `m = m_num / m_den` for the sampled checks.
/// `passed` is set to 1 when no check failed; `report_json`, when not NULL,
/// receives the report.
///
/// # Safety
/// Pointers must be valid; the report is released with `crg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn crg_verify(
    group: *const CrgGroup,
    suite: CrgSuite,
    m_num: i64,
    m_den: i64,
    passed: *mut i32,
    report_json: *mut *mut c_char,
) -> CrgStatus {
    non_null!(group, passed);
    if m_den == 0 {
        set_error("m_den must be nonzero");
        return CrgStatus::OutOfRange;
    }
    guard(|| {
        let suite = match suite {
            CrgSuite::Core => Suite::Core,
            CrgSuite::Spectral => Suite::Spectral,
            CrgSuite::Tensor => Suite::Tensor,
            CrgSuite::Parabolic => Suite::Parabolic,
            CrgSuite::Dihedral => Suite::Dihedral,
            CrgSuite::Krammer => Suite::Krammer,
            CrgSuite::All => Suite::All,
        };
        let opts = VerifyOptions {
            suite,
            m: BigRational::new(BigInt::from(m_num), BigInt::from(m_den)),
            force: false,
        };
        let g = &*group;
        let report = run_suite(&g.spec, &g.data, &opts);
        *passed = i32::from(report.passed());
        if report_json.is_null() {
            CrgStatus::Ok
        } else {
            write_string(report.to_json().to_string(), report_json)
        }
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Krammer matrices on `strands >= 2` strands.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn crg_krammer_new(strands: usize, out: *mut *mut CrgKrammer) -> CrgStatus {
    non_null!(out);
    guard(|| match build_krammer(strands) {
        Ok(model) => {
            *out = Box::into_raw(Box::new(CrgKrammer { model }));
            CrgStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `model` must come from `crg_krammer_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn crg_krammer_free(model: *mut CrgKrammer) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_krammer_dimension(model: *const CrgKrammer, out: *mut usize) -> CrgStatus {
    non_null!(model, out);
    *out = (*model).model.dim();
    CrgStatus::Ok
}

/// Sets `out` to 1 when the braid relations hold exactly.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_krammer_braid_relations(model: *const CrgKrammer, out: *mut i32) -> CrgStatus {
    non_null!(model, out);
    guard(|| {
        *out = i32::from(check_braid_relations(&(*model).model));
        CrgStatus::Ok
    })
}

/// Sets `out` to 1 when every generator cubes to the identity at
/// `q = -zeta_3`, `t = 1`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn crg_krammer_cubic(model: *const CrgKrammer, out: *mut i32) -> CrgStatus {
    non_null!(model, out);
    guard(|| {
        *out = i32::from(cubic_specialization_check(&(*model).model));
        CrgStatus::Ok
    })
}
