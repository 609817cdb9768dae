//! C ABI for `higher_nash`.
//!
//! Every function returns an [`HnStatus`]. Results come back through out
//! pointers. On failure, [`hn_last_error_message`] describes the error for
//! the calling thread. Fans are opaque handles released with
//! [`hn_fan_free`]; strings handed out by the library are released with
//! [`hn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use higher_nash::error::Error;
use higher_nash::etak::{build_eta_k, verify_main};
use higher_nash::nashfan::{family_points, is_in_s, minimal_resolution_fan, newton_fan, refines, Fan2D};
use higher_nash::oracle::{oracle_fan, OracleOptions};
use higher_nash::MultiIndex;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    CostRefused = 3,
    BufferTooSmall = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque fan handle.
pub struct HnFan {
    inner: Fan2D,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn status_of(e: &Error) -> HnStatus {
    match e {
        Error::InvalidArgument(_) | Error::LengthMismatch { .. } | Error::NotSquare { .. } => HnStatus::InvalidArgument,
        Error::CostRefused { .. } => HnStatus::CostRefused,
        _ => HnStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HnStatus, String)>) -> HnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HnStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside higher_nash");
            HnStatus::Panic
        }
    }
}

fn lib<T>(r: higher_nash::Result<T>) -> Result<T, (HnStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (HnStatus, String) {
    (HnStatus::NullPointer, "null pointer argument".into())
}

/// Message for the last failed call on this thread. Valid until the next
/// call into the library from the same thread; empty after a success.
#[no_mangle]
pub extern "C" fn hn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn put_fan(out: *mut *mut HnFan, fan: Fan2D) {
    *out = Box::into_raw(Box::new(HnFan { inner: fan }));
}

/// Fan of the points `m_{J_eta}`, `eta` ranging over all sequences for `n`.
///
/// # Safety
/// `out` must be a valid pointer to a `HnFan *`.
#[no_mangle]
pub unsafe extern "C" fn hn_family_fan_new(n: u32, out: *mut *mut HnFan) -> HnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let fan = lib(family_points(n).and_then(|c| newton_fan(&c)))?;
        put_fan(out, fan);
        Ok(())
    })
}

/// Fan of all of `S_{A_n}` by exhaustive enumeration. Refused with
/// `CostRefused` for `n > 3` unless `override_cost` is set.
///
/// # Safety
/// `out` must be a valid pointer to a `HnFan *`.
#[no_mangle]
pub unsafe extern "C" fn hn_oracle_fan_new(n: u32, override_cost: bool, out: *mut *mut HnFan) -> HnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let opts = OracleOptions {
            override_cost,
            cache_dir: None,
        };
        let fan = lib(oracle_fan(n, &opts))?;
        put_fan(out, fan);
        Ok(())
    })
}

/// `sigma_n` subdivided by the rays `(k, 1-k)`, `k = 1..=n`.
///
/// # Safety
/// `out` must be a valid pointer to a `HnFan *`.
#[no_mangle]
pub unsafe extern "C" fn hn_minimal_resolution_fan_new(n: u32, out: *mut *mut HnFan) -> HnStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        put_fan(out, lib(minimal_resolution_fan(n))?);
        Ok(())
    })
}

/// Releases a fan. Null is ignored.
///
/// # Safety
/// `fan` must come from one of the `hn_*_fan_new` functions and not have
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_free(fan: *mut HnFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_ray_count(fan: *const HnFan, out: *mut usize) -> HnStatus {
    guard(|| {
        let (Some(fan), false) = (fan.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = fan.inner.rays.len();
        Ok(())
    })
}

/// Ray `index` in clockwise order from `(0,1)`.
///
/// # Safety
/// `fan` must be a live handle; `x` and `y` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_ray(fan: *const HnFan, index: usize, x: *mut i64, y: *mut i64) -> HnStatus {
    guard(|| {
        let (Some(fan), false) = (fan.as_ref(), x.is_null() || y.is_null()) else {
            return Err(null());
        };
        let r = fan.inner.rays.get(index).ok_or_else(|| {
            (
                HnStatus::InvalidArgument,
                format!("ray index {index} out of range ({} rays)", fan.inner.rays.len()),
            )
        })?;
        *x = r.x;
        *y = r.y;
        Ok(())
    })
}

/// Minimizing point of cone `index` (between rays `index` and `index + 1`).
/// `has_tag` is false for untagged cones.
///
/// # Safety
/// `fan` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_cone_tag(
    fan: *const HnFan,
    index: usize,
    has_tag: *mut bool,
    x: *mut i64,
    y: *mut i64,
) -> HnStatus {
    guard(|| {
        let (Some(fan), false) = (fan.as_ref(), has_tag.is_null() || x.is_null() || y.is_null()) else {
            return Err(null());
        };
        let cone = fan.inner.cones.get(index).ok_or_else(|| {
            (
                HnStatus::InvalidArgument,
                format!("cone index {index} out of range ({} cones)", fan.inner.cones.len()),
            )
        })?;
        *has_tag = cone.m.is_some();
        if let Some(m) = cone.m {
            *x = m.x;
            *y = m.y;
        }
        Ok(())
    })
}

/// Whether `fine` refines `coarse`.
///
/// # Safety
/// Both handles must be live; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_refines(fine: *const HnFan, coarse: *const HnFan, out: *mut bool) -> HnStatus {
    guard(|| {
        let (Some(fine), Some(coarse), false) = (fine.as_ref(), coarse.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = lib(refines(&fine.inner, &coarse.inner))?;
        Ok(())
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), (HnStatus, String)> {
    let c = CString::new(s).map_err(|e| (HnStatus::Internal, e.to_string()))?;
    // SAFETY: callers check `out` for null first.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// The fan as JSON. Release the string with [`hn_string_free`].
///
/// # Safety
/// `fan` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hn_fan_to_json(fan: *const HnFan, out: *mut *mut c_char) -> HnStatus {
    guard(|| {
        let (Some(fan), false) = (fan.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let json = lib(serde_json::to_string(&fan.inner).map_err(Error::from))?;
        give_string(json, out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes `z, d_0, d_1, ..., d_r` of `eta_k` into `buf`. `len` receives the
/// number of entries; if it exceeds `cap`, nothing is written and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `buf` must point to `cap` writable `u32`s (it may be null when `cap` is
/// 0); `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hn_eta_k(n: u32, k: u32, buf: *mut u32, cap: usize, len: *mut usize) -> HnStatus {
    guard(|| {
        if len.is_null() || (buf.is_null() && cap > 0) {
            return Err(null());
        }
        let eta = lib(build_eta_k(n, k))?;
        let seq: Vec<u32> = std::iter::once(u32::from(eta.z()))
            .chain(eta.d().iter().copied())
            .collect();
        *len = seq.len();
        if seq.len() > cap {
            return Err((HnStatus::BufferTooSmall, format!("need {} entries", seq.len())));
        }
        ptr::copy_nonoverlapping(seq.as_ptr(), buf, seq.len());
        Ok(())
    })
}

/// Whether `J` is in `S_{A_n}`. `triples` holds `count` multi-indices as
/// consecutive `(b1, b2, b3)` triples.
///
/// # Safety
/// `triples` must point to `3 * count` readable `u32`s; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hn_is_in_s(n: u32, triples: *const u32, count: usize, out: *mut bool) -> HnStatus {
    guard(|| {
        if triples.is_null() || out.is_null() {
            return Err(null());
        }
        let raw = std::slice::from_raw_parts(triples, 3 * count);
        let j: Vec<MultiIndex> = raw
            .chunks_exact(3)
            .map(|c| MultiIndex::triple(c[0], c[1], c[2]))
            .collect();
        *out = lib(is_in_s(n, &j))?;
        Ok(())
    })
}

/// Checks the ray `(k, 1-k)` for `n`. `passed` receives the verdict and,
/// when `json` is non-null, the full report as JSON (release with
/// [`hn_string_free`]).
///
/// # Safety
/// `passed` must be valid; `json` may be null.
#[no_mangle]
pub unsafe extern "C" fn hn_verify_main(n: u32, k: u32, passed: *mut bool, json: *mut *mut c_char) -> HnStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null());
        }
        let report = lib(verify_main(n, k))?;
        *passed = report.passed();
        if !json.is_null() {
            give_string(lib(serde_json::to_string(&report).map_err(Error::from))?, json)?;
        }
        Ok(())
    })
}
