//! C ABI over `vecg`.
//!
//! Groups and cocycles are opaque handles created from the same spec strings
//! the CLI accepts and released with the matching `_free` function. Every
//! fallible call returns a `VecgStatus`; the message of the last failure on
//! the calling thread is available from `vecg_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use vecg::{Cochain, Error, FiniteGroup};

/// Status codes; the first three match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VecgStatus {
    Ok = 0,
    Invalid = 1,
    BoundExceeded = 2,
    NullPointer = 3,
    Panic = 4,
}

/// Opaque finite group.
pub struct VecgGroup(FiniteGroup);

/// Opaque 3-cocycle on a group.
pub struct VecgCocycle {
    group_order: usize,
    omega: Cochain,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VecgStatus {
    set_error(&e.to_string());
    if e.is_bound() {
        VecgStatus::BoundExceeded
    } else {
        VecgStatus::Invalid
    }
}

fn guard(f: impl FnOnce() -> Result<(), VecgStatus>) -> VecgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VecgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            VecgStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, VecgStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(VecgStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        VecgStatus::Invalid
    })
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, VecgStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null pointer argument");
        VecgStatus::NullPointer
    })
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), VecgStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(VecgStatus::NullPointer);
    }
    *out = v;
    Ok(())
}

fn lift<T>(r: vecg::Result<T>) -> Result<T, VecgStatus> {
    r.map_err(|e| status_of(&e))
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn vecg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Replace every group-order enumeration limit; 0 restores the defaults.
#[no_mangle]
pub extern "C" fn vecg_set_bound(limit: usize) {
    vecg::set_bound_override(limit);
}

/// Build a group from a spec such as `family:cyclic:4` or a JSON table.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_group_new(spec: *const c_char, out: *mut *mut VecgGroup) -> VecgStatus {
    guard(|| {
        let g = lift(vecg::cli::parse_group(str_arg(spec)?))?;
        write_out(out, Box::into_raw(Box::new(VecgGroup(g))))
    })
}

/// # Safety
/// `g` must come from `vecg_group_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vecg_group_free(g: *mut VecgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn vecg_group_order(g: *const VecgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Product `a·b` of element indices; writes 0 and fails on bad indices.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_group_mul(
    g: *const VecgGroup,
    a: usize,
    b: usize,
    out: *mut usize,
) -> VecgStatus {
    guard(|| {
        let g = &ref_arg(g)?.0;
        if a >= g.order() || b >= g.order() {
            set_error("element index out of range");
            return Err(VecgStatus::Invalid);
        }
        write_out(out, g.mul(a, b))
    })
}

/// Parse a 3-cocycle spec (`0`, `cyclic:n:k` or JSON) on `g`.
///
/// # Safety
/// `g` must be a live handle, `spec` a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_cocycle_new(
    g: *const VecgGroup,
    spec: *const c_char,
    out: *mut *mut VecgCocycle,
) -> VecgStatus {
    guard(|| {
        let g = &ref_arg(g)?.0;
        let omega = lift(vecg::cli::parse_omega(g, str_arg(spec)?))?;
        let c = VecgCocycle {
            group_order: g.order(),
            omega,
        };
        write_out(out, Box::into_raw(Box::new(c)))
    })
}

/// # Safety
/// `w` must come from `vecg_cocycle_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vecg_cocycle_free(w: *mut VecgCocycle) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

unsafe fn pair<'a>(
    g: *const VecgGroup,
    w: *const VecgCocycle,
) -> Result<(&'a FiniteGroup, &'a Cochain), VecgStatus> {
    let (g, w) = (&ref_arg(g)?.0, ref_arg(w)?);
    if w.group_order != g.order() {
        set_error("cocycle belongs to a group of another order");
        return Err(VecgStatus::Invalid);
    }
    Ok((g, &w.omega))
}

unsafe fn count(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
    f: impl FnOnce(&FiniteGroup, &Cochain) -> vecg::Result<usize>,
) -> VecgStatus {
    guard(|| {
        let (g, w) = pair(g, w)?;
        let n = lift(f(g, w))?;
        write_out(out, n)
    })
}

/// Number of indecomposable module categories over `Vec_G^ω`.
///
/// # Safety
/// `g` and `w` must be live handles for the same group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_module_category_count(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
) -> VecgStatus {
    count(g, w, out, |g, w| vecg::modcats::enumerate_module_categories(g, w).map(|v| v.len()))
}

/// `|BrPic(Vec_G^ω)|`.
///
/// # Safety
/// `g` and `w` must be live handles for the same group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_brpic_order(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
) -> VecgStatus {
    count(g, w, out, |g, w| vecg::bimodcats::enumerate_brpic(g, w).map(|v| v.len()))
}

/// Rank of the center `Z(Vec_G^ω)`.
///
/// # Safety
/// `g` and `w` must be live handles for the same group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_center_rank(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
) -> VecgStatus {
    count(g, w, out, |g, w| vecg::crossed::center_via_conjugation(g, w).map(|v| v.len()))
}

/// Number of invertible objects of the center.
///
/// # Safety
/// `g` and `w` must be live handles for the same group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_center_invertible_count(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
) -> VecgStatus {
    count(g, w, out, |g, w| vecg::invariants::center_invertibles(g, w).map(|c| c.order))
}

/// `|Out⊗(Vec_G^ω)|`.
///
/// # Safety
/// `g` and `w` must be live handles for the same group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_out_tensor_order(
    g: *const VecgGroup,
    w: *const VecgCocycle,
    out: *mut usize,
) -> VecgStatus {
    count(g, w, out, |g, w| vecg::invariants::aut_tensor_and_out(g, w).map(|a| a.out_order))
}

/// Run a CLI command given as `argc` arguments (without the program name).
/// On return `*out_json` holds the JSON report or error object, to be
/// released with `vecg_string_free`; the result is the CLI exit code.
///
/// # Safety
/// `argv` must point to `argc` valid C strings and `out_json` be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vecg_run(
    argv: *const *const c_char,
    argc: usize,
    out_json: *mut *mut c_char,
) -> i32 {
    let r = catch_unwind(AssertUnwindSafe(|| -> Result<(i32, String), VecgStatus> {
        if argv.is_null() && argc > 0 {
            set_error("null argv");
            return Err(VecgStatus::NullPointer);
        }
        let mut args = vec!["vecg".to_string()];
        for i in 0..argc {
            args.push(str_arg(*argv.add(i))?.to_string());
        }
        Ok(vecg::cli::run(args))
    }));
    let (code, text) = match r {
        Ok(Ok(v)) => v,
        Ok(Err(s)) => return s as i32,
        Err(_) => {
            set_error("internal panic");
            return VecgStatus::Panic as i32;
        }
    };
    if !out_json.is_null() {
        *out_json = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
    }
    code
}

/// # Safety
/// `s` must come from `vecg_run` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vecg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
