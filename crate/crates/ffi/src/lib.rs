//! C ABI for `so3cover`.
//!
//! Every entry point returns an `int32_t` status (`SO3_OK` on success) and
//! writes results through out-pointers. Ring elements are passed as opaque
//! handles that must be released with the matching `*_free` function;
//! strings handed out by the library are released with `so3_string_free`.
//! On failure a message is kept per thread and can be read with
//! `so3_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use so3cover::congruence::{check_kappa_congruence, check_root_of_unity_congruence, cm_bound};
use so3cover::invariants::{invariant_mtilde, invariant_valuation};
use so3cover::skein::Level;
use so3cover::{cli, CycInt, CycNum, Valuation};

pub const SO3_OK: i32 = 0;
pub const SO3_ERR_NULL: i32 = -1;
pub const SO3_ERR_INVALID_ARGUMENT: i32 = -2;
pub const SO3_ERR_DOMAIN: i32 = -3;
pub const SO3_ERR_UTF8: i32 = -4;
pub const SO3_ERR_PANIC: i32 = -5;

/// Written by `so3_invariant_valuation` when the invariant vanishes.
pub const SO3_VALUATION_INFINITE: i64 = i64::MAX;

/// An element of `Z[ζ_N]`.
pub struct So3CycInt {
    inner: CycInt,
}

/// An element of `Z[ζ_N][1/p]`.
pub struct So3CycNum {
    inner: CycNum,
}

/// Result of a residue test `x ≡ n·g^m (mod p)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct So3Verdict {
    pub congruent: bool,
    /// Witness exponent `m`; meaningful only when `congruent`.
    pub m: u32,
    /// Witness scalar `n`; meaningful only when `congruent`.
    pub n: u64,
    pub candidates_checked: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(code: i32, msg: impl Into<String>) -> i32 {
    set_error(msg);
    code
}

fn guard<F: FnOnce() -> i32 + UnwindSafe>(f: F) -> i32 {
    catch_unwind(f).unwrap_or_else(|_| fail(SO3_ERR_PANIC, "internal panic"))
}

fn check_prime(p: u64) -> Result<Level, i32> {
    Level::new(p).map_err(|e| fail(SO3_ERR_INVALID_ARGUMENT, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> i32 {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SO3_OK
        }
        Err(_) => fail(SO3_ERR_UTF8, "output contains a NUL byte"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, i32> {
    if s.is_null() {
        return Err(fail(SO3_ERR_NULL, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SO3_ERR_UTF8, "argument is not valid UTF-8"))
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn so3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn so3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `N` for the ring `Z[ζ_N]` used at prime `p`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_ring_modulus(p: u64, out: *mut u64) -> i32 {
    if out.is_null() {
        return fail(SO3_ERR_NULL, "null out pointer");
    }
    guard(move || match check_prime(p) {
        Ok(level) => {
            *out = level.modulus();
            SO3_OK
        }
        Err(code) => code,
    })
}

/// The unnormalised bracket of the `n`-component Hopf link, each component
/// framed `+1`, at level `p`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_hopf_bracket(p: u64, n: u32, out: *mut *mut So3CycInt) -> i32 {
    if out.is_null() {
        return fail(SO3_ERR_NULL, "null out pointer");
    }
    guard(move || match check_prime(p) {
        Ok(level) => {
            *out = Box::into_raw(Box::new(So3CycInt { inner: level.hopf_bracket(n as usize) }));
            SO3_OK
        }
        Err(code) => code,
    })
}

/// Build `Σ coeffs[i]·ζ_N^i`.
///
/// # Safety
/// `coeffs` must point to `len` readable values (may be NULL when `len` is
/// zero); `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_from_coeffs(
    modulus: u64,
    coeffs: *const i64,
    len: usize,
    out: *mut *mut So3CycInt,
) -> i32 {
    if out.is_null() || (coeffs.is_null() && len > 0) {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    if modulus == 0 {
        return fail(SO3_ERR_INVALID_ARGUMENT, "modulus must be positive");
    }
    let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(coeffs, len) };
    guard(move || {
        let terms: Vec<(i64, i64)> = slice.iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
        *out = Box::into_raw(Box::new(So3CycInt { inner: CycInt::from_terms(modulus, &terms) }));
        SO3_OK
    })
}

/// `a·b`; both operands must live in the same ring.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_mul(a: *const So3CycInt, b: *const So3CycInt, out: *mut *mut So3CycInt) -> i32 {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    let (a, b) = (&(*a).inner, &(*b).inner);
    guard(move || match a.try_mul(b) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(So3CycInt { inner: c }));
            SO3_OK
        }
        Err(e) => fail(SO3_ERR_INVALID_ARGUMENT, e.to_string()),
    })
}

/// Whether two handles hold the same element of the same ring.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_equal(a: *const So3CycInt, b: *const So3CycInt, out: *mut bool) -> i32 {
    if a.is_null() || b.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    *out = (*a).inner == (*b).inner;
    SO3_OK
}

/// Human-readable form, e.g. `1 + ζ20^3`.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_to_string(x: *const So3CycInt, out: *mut *mut c_char) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    write_string(out, (*x).inner.to_string())
}

/// JSON form, as produced by the command-line tool.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_to_json(x: *const So3CycInt, out: *mut *mut c_char) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    match serde_json::to_string(&(*x).inner) {
        Ok(s) => write_string(out, s),
        Err(e) => fail(SO3_ERR_DOMAIN, e.to_string()),
    }
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `x` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn so3_cyc_free(x: *mut So3CycInt) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// The signed invariant of the surgered cabled Hopf link at `p`. Only
/// `p = 5` and `p = 7` carry a pinned sign convention; other primes give
/// `SO3_ERR_DOMAIN`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_invariant(p: u64, out: *mut *mut So3CycNum) -> i32 {
    if out.is_null() {
        return fail(SO3_ERR_NULL, "null out pointer");
    }
    if let Err(code) = check_prime(p) {
        return code;
    }
    guard(move || match invariant_mtilde(p) {
        Ok(v) => {
            *out = Box::into_raw(Box::new(So3CycNum { inner: v }));
            SO3_OK
        }
        Err(e) => fail(SO3_ERR_DOMAIN, e.to_string()),
    })
}

/// Valuation of the invariant at `(1-ζ_p)`; defined for every prime
/// `p ≥ 5`. Writes `SO3_VALUATION_INFINITE` if the invariant vanishes.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_invariant_valuation(p: u64, out: *mut i64) -> i32 {
    if out.is_null() {
        return fail(SO3_ERR_NULL, "null out pointer");
    }
    if let Err(code) = check_prime(p) {
        return code;
    }
    guard(move || match invariant_valuation(p) {
        Ok(Valuation::Finite(v)) => {
            *out = v;
            SO3_OK
        }
        Ok(Valuation::Infinite) => {
            *out = SO3_VALUATION_INFINITE;
            SO3_OK
        }
        Err(e) => fail(SO3_ERR_DOMAIN, e.to_string()),
    })
}

/// `⌈(p² - 7p + 12)/6⌉`.
#[no_mangle]
pub extern "C" fn so3_cm_bound(p: u64) -> u64 {
    cm_bound(p)
}

/// Exponent `k` of the denominator `p^k`.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_num_denominator_exponent(x: *const So3CycNum, out: *mut u32) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    *out = (*x).inner.denominator_exponent();
    SO3_OK
}

/// Numerator as a ring handle, when the value is integral.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_num_to_integral(x: *const So3CycNum, out: *mut *mut So3CycInt) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    match (*x).inner.to_integral() {
        Some(v) => {
            *out = Box::into_raw(Box::new(So3CycInt { inner: v }));
            SO3_OK
        }
        None => fail(SO3_ERR_DOMAIN, "value is not integral"),
    }
}

/// Human-readable form.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_num_to_string(x: *const So3CycNum, out: *mut *mut c_char) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    write_string(out, (*x).inner.to_string())
}

/// JSON form, as produced by the command-line tool.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_num_to_json(x: *const So3CycNum, out: *mut *mut c_char) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    match serde_json::to_string(&(*x).inner) {
        Ok(s) => write_string(out, s),
        Err(e) => fail(SO3_ERR_DOMAIN, e.to_string()),
    }
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `x` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn so3_num_free(x: *mut So3CycNum) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Is `x ≡ n·κ^m (mod p)` for some `m, n`? With `any_root` set the
/// generator is `ζ_N` instead of `κ`.
///
/// # Safety
/// `x` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_check_congruence(
    x: *const So3CycNum,
    p: u64,
    any_root: bool,
    out: *mut So3Verdict,
) -> i32 {
    if x.is_null() || out.is_null() {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    if let Err(code) = check_prime(p) {
        return code;
    }
    let x = &(*x).inner;
    guard(move || {
        let r = if any_root { check_root_of_unity_congruence(x, p) } else { check_kappa_congruence(x, p) };
        match r {
            Ok(v) => {
                let (m, n) = v.witness.unwrap_or((0, 0));
                *out = So3Verdict { congruent: v.congruent, m, n, candidates_checked: v.candidates_checked as u64 };
                SO3_OK
            }
            Err(e) => fail(SO3_ERR_DOMAIN, e.to_string()),
        }
    })
}

/// Run the command-line driver in-process. `argv` excludes the program
/// name. Standard output and error are returned as strings and the process
/// exit code is written to `exit_code`; the return value reports only
/// argument-marshalling failures.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings (may be NULL when
/// `argc` is zero); the out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn so3_cli_run(
    argv: *const *const c_char,
    argc: usize,
    stdout_out: *mut *mut c_char,
    stderr_out: *mut *mut c_char,
    exit_code: *mut i32,
) -> i32 {
    if stdout_out.is_null() || stderr_out.is_null() || exit_code.is_null() || (argv.is_null() && argc > 0) {
        return fail(SO3_ERR_NULL, "null pointer argument");
    }
    let mut args = Vec::with_capacity(argc + 1);
    args.push("so3cover".to_owned());
    for i in 0..argc {
        match read_str(*argv.add(i)) {
            Ok(s) => args.push(s.to_owned()),
            Err(code) => return code,
        }
    }
    guard(move || {
        let outcome = cli::run(&args);
        let code = write_string(stdout_out, outcome.stdout);
        if code != SO3_OK {
            return code;
        }
        let code = write_string(stderr_out, outcome.stderr);
        if code != SO3_OK {
            so3_string_free(*stdout_out);
            *stdout_out = ptr::null_mut();
            return code;
        }
        *exit_code = i32::from(outcome.code);
        SO3_OK
    })
}
