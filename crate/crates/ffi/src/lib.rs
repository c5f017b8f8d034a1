//! C ABI for `sbundle`.
//!
//! Every function returns an [`SbStatus`]. On failure a message is kept per
//! thread and can be read with [`sb_last_error`]. Objects are opaque
//! handles released with their `_free` function; strings returned through
//! `char **` out-parameters are released with [`sb_string_free`].
//!
//! Values are exact big integers inside the library. Accessors returning
//! `int64_t` report [`SbStatus::Overflow`] when a value does not fit; the
//! JSON accessors always carry the exact value.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use sbundle::construction::ConstructionReport;
use sbundle::monodromy::{CoverFile, PermutationCover};
use sbundle::{Genus, RamificationProfile};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidInput = 3,
    Overflow = 4,
    /// The requested bound does not exist for these parameters.
    Absent = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbFormat {
    Json = 0,
    Csv = 1,
}

/// One fibration: base genus, fiber genus, signature.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SbBundle {
    pub base_genus: i64,
    pub fiber_genus: i64,
    pub signature: i64,
}

/// Opaque handle to a construction report.
pub struct SbConstruction {
    report: ConstructionReport,
}

/// Opaque handle to a permutation cover.
pub struct SbCover {
    cover: PermutationCover,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(sbundle::Error),
    Overflow(String),
    Absent(String),
}

impl From<sbundle::Error> for Fail {
    fn from(e: sbundle::Error) -> Self {
        Fail::Lib(e)
    }
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn guard<F: FnOnce() -> Result<(), Fail>>(f: F) -> SbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    let (status, msg) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => return SbStatus::Ok,
        Ok(Err(Fail::Null(what))) => (SbStatus::NullPointer, format!("{what} is null")),
        Ok(Err(Fail::Arg(m))) => (SbStatus::InvalidArgument, m),
        Ok(Err(Fail::Lib(e @ sbundle::Error::OutOfRange(_)))) => {
            (SbStatus::InvalidArgument, e.to_string())
        }
        Ok(Err(Fail::Lib(e))) => (SbStatus::InvalidInput, e.to_string()),
        Ok(Err(Fail::Overflow(m))) => (SbStatus::Overflow, m),
        Ok(Err(Fail::Absent(m))) => (SbStatus::Absent, m),
        Err(_) => (SbStatus::Panic, "internal panic".to_owned()),
    };
    set_last_error(msg);
    status
}

fn to_i64(v: &BigInt, what: &str) -> Result<i64, Fail> {
    v.to_i64()
        .ok_or_else(|| Fail::Overflow(format!("{what} {v} does not fit in int64_t")))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null("handle"))
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail::Arg("output contains a nul byte".into()))
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn publish<T>(value: T, out_ptr: *mut *mut T) {
    // SAFETY: callers check `out_ptr` for null first.
    unsafe { *out_ptr = Box::into_raw(Box::new(value)) };
}

/// Builds `X_{g,n}` (`g, n >= 2`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_xgn(
    g: u32,
    n: u32,
    out: *mut *mut SbConstruction,
) -> SbStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let params = sbundle::ConstructionParams::new(g, n)?;
        publish(
            SbConstruction {
                report: sbundle::build_xgn(params)?,
            },
            out,
        );
        Ok(())
    })
}

/// Builds the genus-2 double-cover construction.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_simple_genus2(out: *mut *mut SbConstruction) -> SbStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        publish(
            SbConstruction {
                report: sbundle::build_simple_genus2()?,
            },
            out,
        );
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_free(h: *mut SbConstruction) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_signature(
    h: *const SbConstruction,
    out: *mut i64,
) -> SbStatus {
    guard(|| {
        let rep = &handle(h)?.report;
        *out_i64(out)? = to_i64(&rep.signature, "signature")?;
        Ok(())
    })
}

unsafe fn out_i64<'a>(p: *mut i64) -> Result<&'a mut i64, Fail> {
    out(p, "out")
}

/// Euler characteristic of the total space.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_total_chi(
    h: *const SbConstruction,
    out: *mut i64,
) -> SbStatus {
    guard(|| {
        let rep = &handle(h)?.report;
        *out_i64(out)? = to_i64(rep.total_chi.value(), "Euler characteristic")?;
        Ok(())
    })
}

/// Fibration `which` (1 or 2) of the construction.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_fibration(
    h: *const SbConstruction,
    which: u32,
    out: *mut SbBundle,
) -> SbStatus {
    guard(|| {
        let rep = &handle(h)?.report;
        let rec = match which {
            1 => &rep.fibration1,
            2 => &rep.fibration2,
            _ => {
                return Err(Fail::Arg(format!(
                    "fibration index must be 1 or 2, got {which}"
                )))
            }
        };
        let target = self::out(out, "out")?;
        *target = SbBundle {
            base_genus: to_i64(rec.base_genus.value(), "base genus")?,
            fiber_genus: to_i64(rec.fiber_genus.value(), "fiber genus")?,
            signature: to_i64(&rec.signature, "signature")?,
        };
        Ok(())
    })
}

/// Report with cross-validation results as JSON. Free with `sb_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_to_json(
    h: *const SbConstruction,
    out: *mut *mut c_char,
) -> SbStatus {
    guard(|| {
        let rep = &handle(h)?.report;
        let target = self::out(out, "out")?;
        let json =
            serde_json::to_string_pretty(&rep.to_document()).map_err(|e| Fail::Lib(e.into()))?;
        *target = into_c_string(json)?;
        Ok(())
    })
}

/// Counts of passed and failed consistency checks.
///
/// # Safety
/// `h` must be a live handle; `passed` and `failed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_construction_cross_validate(
    h: *const SbConstruction,
    passed: *mut usize,
    failed: *mut usize,
) -> SbStatus {
    guard(|| {
        let checks = sbundle::cross_validate(&handle(h)?.report);
        let ok = checks.iter().filter(|c| c.passed).count();
        *out(passed, "passed")? = ok;
        *out(failed, "failed")? = checks.len() - ok;
        Ok(())
    })
}

/// Genus of a connected cover of degree `degree` of a genus-`base`
/// surface with `counts[i]` points of ramification index `indices[i]`.
///
/// # Safety
/// `indices` and `counts` must each point to `len` values (or be NULL when
/// `len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_rh_cover_genus(
    base: u64,
    degree: u64,
    indices: *const u64,
    counts: *const u64,
    len: usize,
    out: *mut i64,
) -> SbStatus {
    guard(|| {
        let mut ram = RamificationProfile::unramified();
        if len > 0 {
            if indices.is_null() || counts.is_null() {
                return Err(Fail::Null("ramification arrays"));
            }
            let (indices, counts) = (
                std::slice::from_raw_parts(indices, len),
                std::slice::from_raw_parts(counts, len),
            );
            for (&i, &c) in indices.iter().zip(counts) {
                ram = ram.with(i, c)?;
            }
        }
        let genus = sbundle::rh_cover_genus(&Genus::from(base), degree, &ram)?;
        *out_i64(out)? = to_i64(genus.value(), "genus")?;
        Ok(())
    })
}

/// Signature of an `sheets`-fold cyclic cover branched along a class of
/// square `branch_square` in a surface of signature `ambient_signature`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_hirzebruch_signature(
    sheets: i64,
    ambient_signature: i64,
    branch_square: i64,
    out: *mut i64,
) -> SbStatus {
    guard(|| {
        let spec = sbundle::CyclicCoverSpec::new(sheets, ambient_signature, branch_square);
        let sigma = sbundle::hirzebruch_signature(&spec)?;
        *out_i64(out)? = to_i64(&sigma, "signature")?;
        Ok(())
    })
}

/// Parses a cover-spec JSON document. Relation failures are not errors
/// here; check with `sb_cover_validate`.
///
/// # Safety
/// `json` must be a NUL-terminated UTF-8 string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_cover_from_json(
    json: *const c_char,
    out: *mut *mut SbCover,
) -> SbStatus {
    guard(|| {
        if json.is_null() {
            return Err(Fail::Null("json"));
        }
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Fail::Arg("json is not UTF-8".into()))?;
        let cover = CoverFile::from_json(text)?.to_cover()?;
        publish(SbCover { cover }, out);
        Ok(())
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_cover_free(h: *mut SbCover) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_cover_validate(h: *const SbCover, out: *mut bool) -> SbStatus {
    guard(|| {
        let valid = handle(h)?.cover.validate();
        *self::out(out, "out")? = valid;
        Ok(())
    })
}

/// Number of connected components. Fails with `SB_STATUS_INVALID_INPUT`
/// for a cover that does not validate.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_cover_component_count(h: *const SbCover, out: *mut usize) -> SbStatus {
    guard(|| {
        let count = handle(h)?.cover.component_count()?;
        *self::out(out, "out")? = count;
        Ok(())
    })
}

/// Euler characteristic by cycle counting.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_cover_euler_char(h: *const SbCover, out: *mut i64) -> SbStatus {
    guard(|| {
        let chi = handle(h)?.cover.euler_char()?;
        *out_i64(out)? = to_i64(chi.value(), "Euler characteristic")?;
        Ok(())
    })
}

/// Best upper bound on `G_f` from the `X_{g,n}` family. `value` receives
/// `"p/q"`; `n` and `g` the witnessing factorization. Returns
/// `SB_STATUS_ABSENT` when `f` has no factorization with both factors >= 2.
///
/// # Safety
/// `value`, `n` and `g` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_gf_upper(
    f: u64,
    value: *mut *mut c_char,
    n: *mut u64,
    g: *mut u64,
) -> SbStatus {
    guard(|| {
        let (value, n, g) = (out(value, "value")?, out(n, "n")?, out(g, "g")?);
        let bound =
            sbundle::gf_upper(f).ok_or_else(|| Fail::Absent(format!("no bound for f = {f}")))?;
        let w = bound.witness.as_ref().expect("own bounds carry a witness");
        *n = w.n;
        *g = w.g;
        *value = into_c_string(sbundle::format_rational(&bound.value))?;
        Ok(())
    })
}

/// Bounds table for `f = 4..=f_max` as JSON or CSV.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sb_bounds_table(
    f_max: u64,
    format: SbFormat,
    out: *mut *mut c_char,
) -> SbStatus {
    guard(|| {
        let target = self::out(out, "out")?;
        let table = sbundle::bounds_table(f_max)?;
        let text = match format {
            SbFormat::Json => {
                serde_json::to_string_pretty(&table).map_err(|e| Fail::Lib(e.into()))?
            }
            SbFormat::Csv => table.to_csv(),
        };
        *target = into_c_string(text)?;
        Ok(())
    })
}
