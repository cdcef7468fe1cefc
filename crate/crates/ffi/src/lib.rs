//! C interface to `weylmod`.
//!
//! Handles are opaque pointers created by `*_new`/`*_parse` functions and
//! released with the matching `*_free`. Every fallible call returns a
//! [`WeylmodStatus`]; on failure `weylmod_last_error` describes the error.
//! Strings returned through `char **` out-parameters are owned by the
//! caller and must be released with `weylmod_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylmod::liealg::{assoc_product, bracket, cocycle_phi, AlgebraCtx, DiffOp};
use weylmod::parse::{parse_operator, parse_poly, parse_scalar};
use weylmod::scalars::Params;
use weylmod::suites::{run_suite, SuiteBounds};
use weylmod::umod::{act_restricted, OmegaSpec};
use weylmod::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylmodStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Syntax error in an expression.
    Parse = 3,
    /// Invalid arguments or configuration.
    Usage = 4,
    /// The computation itself failed (e.g. a non-invertible division).
    Math = 5,
    /// A verification suite reported failures.
    VerificationFailed = 6,
    /// Internal error; the library caught a panic.
    Internal = 7,
}

/// Declared parameters and the rank operators live in.
pub struct WeylmodContext {
    params: Params,
    rank: usize,
}

/// An operator of the (centrally extended, in rank 1) algebra.
pub struct WeylmodOp {
    op: DiffOp,
}

/// A module on polynomials.
pub struct WeylmodModule {
    spec: OmegaSpec,
    params: Params,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(WeylmodStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => WeylmodStatus::Parse,
            Error::Usage(_) | Error::UnknownParam(_) | Error::DuplicateParam(_) => WeylmodStatus::Usage,
            _ => WeylmodStatus::Math,
        };
        Fail(status, e.to_string())
    }
}

/// Runs `f`, records its error, and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WeylmodStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WeylmodStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            WeylmodStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(WeylmodStatus::NullArgument, format!("`{}` is null", what))
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(WeylmodStatus::InvalidUtf8, format!("`{}` is not valid UTF-8", what)))
}

/// # Safety
/// `p` is null or points to a live handle of type `T`.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw();
    Ok(())
}

/// Message for the most recent failed call on this thread, or null. The
/// pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn weylmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn weylmod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a context from a parameter declaration such as
/// `"lambda:inv,a,b"` and a rank `>= 1`.
///
/// # Safety
/// `params` is a nul-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_context_new(
    params: *const c_char,
    rank: usize,
    out: *mut *mut WeylmodContext,
) -> WeylmodStatus {
    guard(|| {
        let params = Params::parse(text(params, "params")?)?;
        if rank == 0 {
            return Err(Fail(WeylmodStatus::Usage, "rank must be at least 1".into()));
        }
        put(out, WeylmodContext { params, rank })
    })
}

/// # Safety
/// `ctx` is null or a context not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylmod_context_free(ctx: *mut WeylmodContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Parses an operator such as `"3/2*t^-1*D + C"`.
///
/// # Safety
/// `ctx` is a live context, `src` a nul-terminated string, `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_parse(
    ctx: *const WeylmodContext,
    src: *const c_char,
    out: *mut *mut WeylmodOp,
) -> WeylmodStatus {
    guard(|| {
        let ctx = handle(ctx, "ctx")?;
        let op = parse_operator(text(src, "src")?, &ctx.params, ctx.rank)?;
        put(out, WeylmodOp { op })
    })
}

/// # Safety
/// `op` is null or an operator not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_free(op: *mut WeylmodOp) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Canonical text of an operator.
///
/// # Safety
/// `op` is a live operator; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_to_string(op: *const WeylmodOp, out: *mut *mut c_char) -> WeylmodStatus {
    guard(|| put_string(out, handle(op, "op")?.op.to_string()))
}

/// JSON form of an operator (numbers as exact strings).
///
/// # Safety
/// `op` is a live operator; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_to_json(op: *const WeylmodOp, out: *mut *mut c_char) -> WeylmodStatus {
    guard(|| put_string(out, weylmod::json::diffop(&handle(op, "op")?.op).to_string()))
}

/// `[a, b]`, including the central term in rank 1.
///
/// # Safety
/// `a`, `b` are live operators; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_bracket(
    a: *const WeylmodOp,
    b: *const WeylmodOp,
    out: *mut *mut WeylmodOp,
) -> WeylmodStatus {
    guard(|| {
        let op = bracket(&handle(a, "a")?.op, &handle(b, "b")?.op)?;
        put(out, WeylmodOp { op })
    })
}

/// The associative product `a b`; fails if either has a central term.
///
/// # Safety
/// `a`, `b` are live operators; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_product(
    a: *const WeylmodOp,
    b: *const WeylmodOp,
    out: *mut *mut WeylmodOp,
) -> WeylmodStatus {
    guard(|| {
        let (a, b) = (&handle(a, "a")?.op, &handle(b, "b")?.op);
        let plain = AlgebraCtx::new(a.rank(), false)?;
        let lift = |x: &DiffOp| -> Result<DiffOp, Fail> {
            if !x.central_coeff().is_zero() {
                return Err(Error::CentralOperand.into());
            }
            Ok(x.with_ctx(plain)?)
        };
        let op = assoc_product(&lift(a)?, &lift(b)?)?;
        put(out, WeylmodOp { op })
    })
}

/// The central cocycle `phi(a, b)` as text.
///
/// # Safety
/// `a`, `b` are live rank-one operators; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_cocycle(
    a: *const WeylmodOp,
    b: *const WeylmodOp,
    out: *mut *mut c_char,
) -> WeylmodStatus {
    guard(|| {
        let s = cocycle_phi(&handle(a, "a")?.op, &handle(b, "b")?.op)?;
        put_string(out, s.to_string())
    })
}

/// Whether two operators are equal: writes 1 or 0 to `out`.
///
/// # Safety
/// `a`, `b` are live operators; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_op_equal(a: *const WeylmodOp, b: *const WeylmodOp, out: *mut c_int) -> WeylmodStatus {
    guard(|| {
        let eq = handle(a, "a")?.op == handle(b, "b")?.op;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c_int::from(eq);
        Ok(())
    })
}

/// The module `Omega(lambda, eps)` of the context's rank; `lambda` is a
/// scalar expression in the context's parameters, used for every
/// coordinate when the rank exceeds one.
///
/// # Safety
/// `ctx` is a live context, `lambda` a nul-terminated string, `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_module_new(
    ctx: *const WeylmodContext,
    lambda: *const c_char,
    eps: u8,
    out: *mut *mut WeylmodModule,
) -> WeylmodStatus {
    guard(|| {
        let ctx = handle(ctx, "ctx")?;
        let l = parse_scalar(text(lambda, "lambda")?, &ctx.params)?;
        let spec =
            if ctx.rank == 1 { OmegaSpec::d_module(l, eps)? } else { OmegaSpec::dnu_module(vec![l; ctx.rank], eps)? };
        put(out, WeylmodModule { spec, params: ctx.params.clone() })
    })
}

/// # Safety
/// `m` is null or a module not yet freed.
#[no_mangle]
pub unsafe extern "C" fn weylmod_module_free(m: *mut WeylmodModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Acts by `op` on the polynomial `f` (text) and writes the result as text.
///
/// # Safety
/// `m`, `op` are live handles, `f` a nul-terminated string, `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_module_act(
    m: *const WeylmodModule,
    op: *const WeylmodOp,
    f: *const c_char,
    out: *mut *mut c_char,
) -> WeylmodStatus {
    guard(|| {
        let m = handle(m, "module")?;
        let poly = parse_poly(text(f, "f")?, &m.params, m.spec.rank())?;
        let r = act_restricted(&handle(op, "op")?.op, &m.spec.vector(poly)?)?;
        put_string(out, r.to_string())
    })
}

/// Runs one verification suite at bounds `m`, `n`, `deg` and writes its
/// one-line summary. Returns `VerificationFailed` if any check failed.
///
/// # Safety
/// `name` is a nul-terminated string; `out` is null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_verify_suite(
    name: *const c_char,
    m: i64,
    n: u32,
    deg: u32,
    out: *mut *mut c_char,
) -> WeylmodStatus {
    guard(|| {
        let report = run_suite(text(name, "name")?, &SuiteBounds { m, n, deg, seed: 0 })?;
        if !out.is_null() {
            put_string(out, report.to_string())?;
        }
        if report.passed() {
            Ok(())
        } else {
            Err(Fail(WeylmodStatus::VerificationFailed, report.failures.join("; ")))
        }
    })
}

/// Runs the command-line interface on `argc` arguments (without the
/// program name) and returns its exit code; standard output and error are
/// written to `out` and `err` when those are non-null.
///
/// # Safety
/// `argv` holds `argc` nul-terminated strings; `out` and `err` are null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn weylmod_cli_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> c_int {
    let mut code = 2;
    let status = guard(|| {
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["weylmod".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argv[i]")?.to_string());
        }
        let o = weylmod::cli::run(args);
        code = o.code;
        if !out.is_null() {
            put_string(out, o.stdout)?;
        }
        if !err.is_null() {
            put_string(err, o.stderr)?;
        }
        Ok(())
    });
    if status == WeylmodStatus::Ok {
        code
    } else {
        2
    }
}
