//! C interface to `fraggroup`: opaque system and element handles, status codes,
//! and a per-thread last-error message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fraggroup::{run_suite, Error, Order, Point, Suite, SystemConfig, TableElement};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownGenerator = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    ExceedsBound = 7,
    Io = 8,
    Internal = 9,
    Panic = 10,
}

/// A loaded system. Free with `fg_system_free`.
pub struct FgSystem(SystemConfig);

/// A group element in normal form. Free with `fg_element_free`.
pub struct FgElement(TableElement);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FgStatus {
    match e {
        Error::Parse(_) | Error::UnknownLetter(_) | Error::Json(_) => FgStatus::Parse,
        Error::UnknownGenerator(_) => FgStatus::UnknownGenerator,
        Error::Io(_) => FgStatus::Io,
        Error::BoundExceeded(_) | Error::DepthExceeded { .. } => FgStatus::ExceedsBound,
        Error::Internal(_) => FgStatus::Internal,
        _ => FgStatus::InvalidArgument,
    }
}

/// Run `f`, recording errors and catching panics.
fn guard(f: impl FnOnce() -> Result<(), (FgStatus, String)>) -> FgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside fraggroup".into());
            FgStatus::Panic
        }
    }
}

fn lib(e: Error) -> (FgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (FgStatus, String) {
    (FgStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (FgStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (FgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Copy `text` with a terminating nul into `buf`; `needed` gets the full size.
unsafe fn write_str(text: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), (FgStatus, String)> {
    let bytes = text.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return Err((FgStatus::BufferTooSmall, format!("{} bytes needed", bytes.len() + 1)));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Copy the last error message of this thread into `buf`. Returns `Ok` with an
/// empty string when there is none.
///
/// # Safety
/// `buf` must be valid for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn fg_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> FgStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().as_ref().map(|c| c.to_string_lossy().into_owned()).unwrap_or_default());
    guard(|| write_str(&msg, buf, len, needed))
}

/// Load a built-in system (`f`, `grigorchuk`) or a JSON system file.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_system_load(name: *const c_char, out: *mut *mut FgSystem) -> FgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(name, "name")?;
        let sys = SystemConfig::load(name).map_err(lib)?;
        *out = Box::into_raw(Box::new(FgSystem(sys)));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or come from `fg_system_load`, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_system_free(sys: *mut FgSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of generators of the system.
///
/// # Safety
/// `sys` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fg_system_generator_count(sys: *const FgSystem, out: *mut usize) -> FgStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| null("sys"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = sys.0.generators().len();
        Ok(())
    })
}

/// Product of space-separated generator names, the last applied first. An
/// empty string gives the identity.
///
/// # Safety
/// `sys` must be a live handle, `word` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_element_from_word(sys: *const FgSystem, word: *const c_char, out: *mut *mut FgElement) -> FgStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| null("sys"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let word = read_str(word, "word")?;
        let names: Vec<&str> = word.split_whitespace().collect();
        let g = sys.0.word(&names).map_err(lib)?;
        *out = Box::into_raw(Box::new(FgElement(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fg_element_free(g: *mut FgElement) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// `g2 ∘ g1`.
///
/// # Safety
/// `g2`, `g1` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_element_compose(g2: *const FgElement, g1: *const FgElement, out: *mut *mut FgElement) -> FgStatus {
    guard(|| {
        let g2 = g2.as_ref().ok_or_else(|| null("g2"))?;
        let g1 = g1.as_ref().ok_or_else(|| null("g1"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = TableElement::compose(&g2.0, &g1.0).map_err(lib)?;
        *out = Box::into_raw(Box::new(FgElement(g)));
        Ok(())
    })
}

/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_element_equal(a: *const FgElement, b: *const FgElement, out: *mut bool) -> FgStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("a"))?;
        let b = b.as_ref().ok_or_else(|| null("b"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = a.0 == b.0;
        Ok(())
    })
}

/// Order of `g`; `ExceedsBound` if `g^k ≠ 1` for all `k ≤ max_power`.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_element_order(g: *const FgElement, max_power: u64, out: *mut u64) -> FgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        match g.0.order(max_power).map_err(lib)? {
            Order::Finite(k) => {
                *out = k;
                Ok(())
            }
            Order::ExceedsBound => Err((FgStatus::ExceedsBound, format!("order exceeds {max_power}"))),
        }
    })
}

/// Image of an eventually periodic point such as `2(12)`, written into `buf`.
///
/// # Safety
/// `g` must be a live handle, `point` a nul-terminated string, `buf` valid
/// for `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn fg_element_evaluate(
    g: *const FgElement,
    point: *const c_char,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> FgStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let p: Point = read_str(point, "point")?.parse().map_err(lib)?;
        p.check_alphabet(g.0.machine().alphabet()).map_err(lib)?;
        write_str(&g.0.evaluate(&p).to_string(), buf, len, needed)
    })
}

/// Run a verification suite (`all`, `relations`, `returns`, `models`, `frag`).
///
/// # Safety
/// `suite` must be a nul-terminated string; `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn fg_verify(suite: *const c_char, seed: u64, passed: *mut bool) -> FgStatus {
    guard(|| {
        let passed = passed.as_mut().ok_or_else(|| null("passed"))?;
        let suite: Suite = read_str(suite, "suite")?.parse().map_err(lib)?;
        *passed = run_suite(suite, seed).map_err(lib)?.passed();
        Ok(())
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn fg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
