//! C ABI for isolab.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns an
//! [`IsolabStatus`]; on failure the message is available from
//! [`isolab_last_error_message`] on the same thread. Strings handed out by
//! the library are released with [`isolab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use isolab::algebra::rational::parse_rational;
use isolab::curve::SuperellipticCurve;
use isolab::garnier::{thm10_solution, thm11_family, verify_grid, GarnierAlgebraicSolution};
use isolab::golden::{reproduce, ExampleId};
use isolab::painleve::{
    pvi_residual, thm5_solution, thm6_family, thm7_solution, thm8_family, FamilyDocument, PVISolutionFamily,
};
use isolab::periods::{period_report, PeriodOptions, PeriodReport, PeriodTolerances};
use isolab::schlesinger::SCHEMA_VERSION;
use num_complex::Complex64;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsolabStatus {
    Ok = 0,
    InvalidInput = 1,
    Precondition = 2,
    DivisionByZero = 3,
    Parse = 4,
    InsufficientOrder = 5,
    Numerical = 6,
    Io = 7,
    NullPointer = 8,
    Utf8 = 9,
    Panic = 10,
}

/// A Painleve VI solution family.
pub struct IsolabPviFamily(PVISolutionFamily);

/// An algebraic Garnier solution.
pub struct IsolabGarnierSolution(GarnierAlgebraicSolution);

/// A computed period matrix with its checks.
pub struct IsolabPeriodReport(PeriodReport);

enum Failure {
    Core(isolab::Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<isolab::Error> for Failure {
    fn from(e: isolab::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn status(&self) -> IsolabStatus {
        use isolab::Error as E;
        match self {
            Failure::Core(E::InvalidInput(_)) => IsolabStatus::InvalidInput,
            Failure::Core(E::Precondition(_)) => IsolabStatus::Precondition,
            Failure::Core(E::DivisionByZero) => IsolabStatus::DivisionByZero,
            Failure::Core(E::Parse { .. }) => IsolabStatus::Parse,
            Failure::Core(E::InsufficientOrder(_)) => IsolabStatus::InsufficientOrder,
            Failure::Core(E::Numerical(_)) => IsolabStatus::Numerical,
            Failure::Core(E::Io(_)) => IsolabStatus::Io,
            Failure::Null(_) => IsolabStatus::NullPointer,
            Failure::Utf8(_) => IsolabStatus::Utf8,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Null(what) => format!("{what} is null"),
            Failure::Utf8(what) => format!("{what} is not valid UTF-8"),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let text = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> IsolabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => IsolabStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(f.message());
            f.status()
        }
        Err(_) => {
            set_last_error("internal panic".into());
            IsolabStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(out: *mut T, what: &'static str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure::Utf8("output string"))?;
    write(out, "out", c.into_raw())
}

unsafe fn boxed<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    write(out, "out", Box::into_raw(Box::new(value)))
}

fn json(value: &impl serde::Serialize) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Core(isolab::Error::Io(e.to_string())))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn isolab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isolab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Theorem 5 solution for `n` not divisible by 3.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_thm5(n: i64, out: *mut *mut IsolabPviFamily) -> IsolabStatus {
    guard(|| boxed(out, IsolabPviFamily(thm5_solution(n)?)))
}

/// Theorem 6 one-parameter family for negative `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_thm6(n: i64, out: *mut *mut IsolabPviFamily) -> IsolabStatus {
    guard(|| boxed(out, IsolabPviFamily(thm6_family(n)?)))
}

/// Theorem 7 solution; `b` and `c` are rationals such as `"-2/3"`.
///
/// # Safety
/// `b` and `c` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_thm7(
    n: i64,
    b: *const c_char,
    c: *const c_char,
    out: *mut *mut IsolabPviFamily,
) -> IsolabStatus {
    guard(|| {
        let b = parse_rational(text(b, "b")?)?;
        let c = parse_rational(text(c, "c")?)?;
        boxed(out, IsolabPviFamily(thm7_solution(n, &b, &c)?))
    })
}

/// Theorem 8 family for integers `(a, b, c)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_thm8(a: i64, b: i64, c: i64, out: *mut *mut IsolabPviFamily) -> IsolabStatus {
    guard(|| boxed(out, IsolabPviFamily(thm8_family(a, b, c)?)))
}

/// Reads a `pvi_family` JSON document.
///
/// # Safety
/// `document` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_family_from_json(
    document: *const c_char,
    out: *mut *mut IsolabPviFamily,
) -> IsolabStatus {
    guard(|| {
        let doc: FamilyDocument = serde_json::from_str(text(document, "document")?)
            .map_err(|e| isolab::Error::Parse { pos: e.column(), msg: e.to_string() })?;
        boxed(out, IsolabPviFamily(PVISolutionFamily::from_document(&doc)?))
    })
}

/// Canonical text of `y(x)`; free with [`isolab_string_free`].
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_family_y(family: *const IsolabPviFamily, out: *mut *mut c_char) -> IsolabStatus {
    guard(|| {
        let fam = handle(family, "family")?;
        write_string(out, isolab::algebra::text::format_ratfunc(&fam.0.y))
    })
}

/// Whether the PVI residual of `y` is identically zero.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_family_residual_is_zero(
    family: *const IsolabPviFamily,
    out: *mut bool,
) -> IsolabStatus {
    guard(|| {
        let fam = &handle(family, "family")?.0;
        let zero = pvi_residual(&fam.y, &fam.params)?.is_zero();
        write(out, "out", zero)
    })
}

/// The `pvi_family` JSON document, including the residual status.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_family_json(family: *const IsolabPviFamily, out: *mut *mut c_char) -> IsolabStatus {
    guard(|| {
        let fam = &handle(family, "family")?.0;
        let zero = pvi_residual(&fam.y, &fam.params)?.is_zero();
        write_string(out, json(&fam.to_document(Some(zero)))?)
    })
}

/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isolab_pvi_family_free(family: *mut IsolabPviFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Theorem 10 solution with `big_m` times `a_1..a_M`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_garnier_thm10(
    big_m: usize,
    m: i64,
    n: i64,
    out: *mut *mut IsolabGarnierSolution,
) -> IsolabStatus {
    guard(|| boxed(out, IsolabGarnierSolution(thm10_solution(big_m, m, n)?)))
}

/// Theorem 11 family; `c` holds `big_m` rational strings.
///
/// # Safety
/// `c` must point to `big_m` NUL-terminated strings and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_garnier_thm11(
    big_m: usize,
    n: i64,
    c: *const *const c_char,
    out: *mut *mut IsolabGarnierSolution,
) -> IsolabStatus {
    guard(|| {
        if c.is_null() && big_m > 0 {
            return Err(Failure::Null("c"));
        }
        let coeffs = (0..big_m)
            .map(|k| Ok(parse_rational(text(*c.add(k), "c entry")?)?))
            .collect::<Result<Vec<_>, Failure>>()?;
        boxed(out, IsolabGarnierSolution(thm11_family(big_m, n, &coeffs)?))
    })
}

/// Largest Hamiltonian residual over `count` points `(a_1, a_2)`, stored
/// consecutively in `points`, and all 16 sign vectors. Two variables only.
///
/// # Safety
/// `solution` must be a live handle, `points` must hold `2 * count`
/// doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_garnier_max_residual(
    solution: *const IsolabGarnierSolution,
    points: *const f64,
    count: usize,
    step: f64,
    out: *mut f64,
) -> IsolabStatus {
    guard(|| {
        let sol = &handle(solution, "solution")?.0;
        if points.is_null() && count > 0 {
            return Err(Failure::Null("points"));
        }
        let flat = if count == 0 { &[][..] } else { std::slice::from_raw_parts(points, 2 * count) };
        let pts: Vec<[f64; 2]> = flat.chunks_exact(2).map(|p| [p[0], p[1]]).collect();
        let rows = verify_grid(sol, &pts, step)?;
        write(out, "out", rows.iter().map(|r| r.residual).fold(0.0, f64::max))
    })
}

/// The `garnier_solution` JSON document without verification rows.
///
/// # Safety
/// `solution` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_garnier_json(
    solution: *const IsolabGarnierSolution,
    out: *mut *mut c_char,
) -> IsolabStatus {
    guard(|| {
        let sol = &handle(solution, "solution")?.0;
        write_string(out, json(&sol.to_document(None))?)
    })
}

/// # Safety
/// `solution` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isolab_garnier_free(solution: *mut IsolabGarnierSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

#[allow(clippy::too_many_arguments)]
/// Periods of `w^(jn) dz/(z - a_i)` on `w^m = (z - a_1)...(z - a_N)` with
/// the default tolerances. A positive `fd_step` adds the finite-difference
/// check; zero or negative skips it.
///
/// # Safety
/// `re` and `im` must each hold `count` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_new(
    m: u32,
    n: i64,
    re: *const f64,
    im: *const f64,
    count: usize,
    j: u32,
    fd_step: f64,
    out: *mut *mut IsolabPeriodReport,
) -> IsolabStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(Failure::Null("branch points"));
        }
        let re = std::slice::from_raw_parts(re, count);
        let im = std::slice::from_raw_parts(im, count);
        let points = re.iter().zip(im).map(|(&x, &y)| Complex64::new(x, y)).collect();
        let curve = SuperellipticCurve::numeric(m, n, points)?;
        let fd = (fd_step > 0.0).then_some(fd_step);
        let report = period_report(&curve, j, &PeriodOptions::default(), fd, PeriodTolerances::default())?;
        boxed(out, IsolabPeriodReport(report))
    })
}

/// Observed and expected rank and the overall verdict. Any out pointer
/// may be null.
///
/// # Safety
/// `report` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_summary(
    report: *const IsolabPeriodReport,
    rank: *mut usize,
    expected_rank: *mut usize,
    passed: *mut bool,
) -> IsolabStatus {
    guard(|| {
        let rep = &handle(report, "report")?.0;
        if !rank.is_null() {
            rank.write(rep.rank);
        }
        if !expected_rank.is_null() {
            expected_rank.write(rep.expected_rank);
        }
        if !passed.is_null() {
            passed.write(rep.passed);
        }
        Ok(())
    })
}

/// Matrix shape: `rows` branch points by `cols` cycles.
///
/// # Safety
/// `report` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_shape(
    report: *const IsolabPeriodReport,
    rows: *mut usize,
    cols: *mut usize,
) -> IsolabStatus {
    guard(|| {
        let m = &handle(report, "report")?.0.matrix;
        write(rows, "rows", m.rows)?;
        write(cols, "cols", m.cols)
    })
}

/// Entry `(row, col)` of the period matrix.
///
/// # Safety
/// `report` must be a live handle and the out pointers valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_entry(
    report: *const IsolabPeriodReport,
    row: usize,
    col: usize,
    re: *mut f64,
    im: *mut f64,
) -> IsolabStatus {
    guard(|| {
        let m = &handle(report, "report")?.0.matrix;
        if row >= m.rows || col >= m.cols {
            return Err(isolab::Error::InvalidInput(format!("entry ({row}, {col}) outside {} x {}", m.rows, m.cols)).into());
        }
        let z = m.get(row, col);
        write(re, "re", z.re)?;
        write(im, "im", z.im)
    })
}

/// The `period_report` JSON document.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_json(
    report: *const IsolabPeriodReport,
    out: *mut *mut c_char,
) -> IsolabStatus {
    guard(|| {
        let rep = &handle(report, "report")?.0;
        let mut doc = serde_json::to_value(rep).map_err(|e| isolab::Error::Io(e.to_string()))?;
        if let Some(map) = doc.as_object_mut() {
            map.insert("schema_version".into(), SCHEMA_VERSION.into());
            map.insert("kind".into(), "period_report".into());
        }
        write_string(out, json(&doc)?)
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn isolab_period_report_free(report: *mut IsolabPeriodReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Recomputes a worked example (`"example-1"` ... `"example-9"`). `passed`
/// receives the verdict; `report_json`, if not null, the full report.
///
/// # Safety
/// `id` must be a NUL-terminated string; `passed` must be valid.
#[no_mangle]
pub unsafe extern "C" fn isolab_reproduce(
    id: *const c_char,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> IsolabStatus {
    guard(|| {
        let id: ExampleId = text(id, "id")?.parse()?;
        let report = reproduce(id)?;
        write(passed, "passed", report.passed)?;
        if !report_json.is_null() {
            write_string(report_json, json(&report)?)?;
        }
        Ok(())
    })
}
