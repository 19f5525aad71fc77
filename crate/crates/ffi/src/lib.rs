//! C interface to the hypergroup library.
//!
//! Hypergroups are passed as opaque `HgHypergroup` handles. Every fallible
//! function returns an `HgStatus`; on failure the message is available from
//! `hg_last_error` on the same thread. Strings returned through out
//! parameters are JSON documents owned by the caller and released with
//! `hg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypergroup::catalog::{
    catalog_hypergroup, dual_finite_group_hypergroup, fundamental_quotient, parse_fusion_document,
    parse_lie_types, CatalogHypergroup, LieKind,
};
use hypergroup::classify::classify_quantum_subgroups;
use hypergroup::hypercore::{parse_hypergroup, verify_axioms, verify_axioms_window};
use hypergroup::lowindex::{enumerate_subgroups, GroupPresentation};
use hypergroup::{HgError, Hypergroup};
use serde_json::{json, Value};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The library rejected the input; see `hg_last_error`.
    DomainError = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

/// A hypergroup owned by the library.
pub struct HgHypergroup {
    inner: CatalogHypergroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Domain(HgError),
}

impl From<HgError> for Failure {
    fn from(e: HgError) -> Self {
        Failure::Domain(e)
    }
}

/// Runs `f`, translating failures and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HgStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("{what} is null"));
            HgStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_last_error(format!("{what} is not valid UTF-8"));
            HgStatus::InvalidUtf8
        }
        Ok(Err(Failure::Domain(e))) => {
            set_last_error(e.to_string());
            HgStatus::DomainError
        }
        Err(_) => {
            set_last_error("internal panic");
            HgStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for reads.
unsafe fn arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let s = CString::new(v.to_string()).expect("JSON text has no NUL bytes");
    *out = s.into_raw();
    Ok(())
}

/// # Safety
/// `h` is null or a live handle.
unsafe fn handle<'a>(h: *const HgHypergroup) -> Result<&'a HgHypergroup, Failure> {
    h.as_ref().ok_or(Failure::Null("hypergroup"))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn hg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in hypergroup: `su2`, `uq`, `dual:S3`, `dual:C<n>`,
/// `dual:C2xC2`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergroup_from_catalog(name: *const c_char, out: *mut *mut HgHypergroup) -> HgStatus {
    guard(|| {
        let name = arg(name, "name")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let inner = catalog_hypergroup(name)?;
        *out = Box::into_raw(Box::new(HgHypergroup { inner }));
        Ok(())
    })
}

/// Loads a finite hypergroup from a hypergroup document (with `elements`)
/// or a fusion document (with `fusion`).
///
/// # Safety
/// `doc` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergroup_from_json(doc: *const c_char, out: *mut *mut HgHypergroup) -> HgStatus {
    guard(|| {
        let doc = arg(doc, "doc")?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let v: Value = serde_json::from_str(doc).map_err(|e| HgError::Schema {
            path: "/".into(),
            message: e.to_string(),
        })?;
        let h = if v.get("fusion").is_some() {
            dual_finite_group_hypergroup(&parse_fusion_document(doc)?)?
        } else {
            parse_hypergroup(doc)?
        };
        *out = Box::into_raw(Box::new(HgHypergroup {
            inner: CatalogHypergroup::Finite(h),
        }));
        Ok(())
    })
}

/// Releases a handle.
///
/// # Safety
/// `h` is null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergroup_free(h: *mut HgHypergroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

fn product_labels<H: Hypergroup>(h: &H, x: &str, y: &str) -> Result<Vec<String>, HgError> {
    let (x, y) = (h.parse_element(x)?, h.parse_element(y)?);
    Ok(h.multiply(&x, &y)?.iter().map(|z| h.format_element(z)).collect())
}

/// `x ⋆ y` as a JSON array of element labels.
///
/// # Safety
/// `h` is a live handle; `x`, `y` are NUL-terminated strings; `out` is
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergroup_product(
    h: *const HgHypergroup,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> HgStatus {
    guard(|| {
        let h = handle(h)?;
        let (x, y) = (arg(x, "x")?, arg(y, "y")?);
        let labels = match &h.inner {
            CatalogHypergroup::Finite(g) => product_labels(g, x, y),
            CatalogHypergroup::Su2(g) => product_labels(g, x, y),
            CatalogHypergroup::Uq(g) => product_labels(g, x, y),
        }?;
        write_json(out, &json!(labels))
    })
}

/// Verifies the hypergroup axioms: exhaustively for finite hypergroups,
/// on elements of size at most `window` otherwise. Writes 1 to `passed`
/// when no violation is found and 0 otherwise.
///
/// # Safety
/// `h` is a live handle; `passed` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_hypergroup_check(h: *const HgHypergroup, window: usize, passed: *mut i32) -> HgStatus {
    guard(|| {
        let h = handle(h)?;
        if passed.is_null() {
            return Err(Failure::Null("passed"));
        }
        let report = match &h.inner {
            CatalogHypergroup::Finite(g) => verify_axioms(g),
            CatalogHypergroup::Su2(g) => verify_axioms_window(g, window),
            CatalogHypergroup::Uq(g) => verify_axioms_window(g, window),
        };
        *passed = i32::from(report.passed());
        Ok(())
    })
}

/// `P/Q` for the Lie type `kind` (one of A–G) and `rank`, as
/// `{"group": "Z/3", "invariants": [3]}`.
///
/// # Safety
/// `kind` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_fundamental_quotient(kind: *const c_char, rank: usize, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let kind: LieKind = arg(kind, "kind")?.parse()?;
        let q = fundamental_quotient(kind, rank)?;
        write_json(out, &json!({ "group": q.to_string(), "invariants": q.factors }))
    })
}

/// Subgroups of index at most `max_index` of a group such as `C2*C2`, as
/// a JSON array of `{"index": k, "action": {"s": [2, 1], ...}}`.
///
/// # Safety
/// `group` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_enumerate_subgroups(
    group: *const c_char,
    max_index: usize,
    out: *mut *mut c_char,
) -> HgStatus {
    guard(|| {
        let p: GroupPresentation = arg(group, "group")?.parse()?;
        let records = enumerate_subgroups(&p, max_index)?;
        let rows: Vec<Value> = records.iter().map(|r| r.to_json(&p)).collect();
        write_json(out, &json!(rows))
    })
}

/// Finite-index quantum subgroups for comma-separated Lie types such as
/// `A1,A1`, as `{"grading_group": ..., "records": [...]}`.
///
/// # Safety
/// `lie` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hg_classify(lie: *const c_char, max_index: usize, out: *mut *mut c_char) -> HgStatus {
    guard(|| {
        let types = parse_lie_types(arg(lie, "lie")?)?;
        let c = classify_quantum_subgroups(&types, max_index)?;
        write_json(out, &c.to_json())
    })
}
