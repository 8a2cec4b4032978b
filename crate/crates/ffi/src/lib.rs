//! C ABI over the `mills` crate.
//!
//! Every fallible function returns a [`MillsStatus`] and writes results
//! through out-pointers. On failure the message for the calling thread is
//! available from [`mills_last_error_message`]. Comparison rows and
//! conjecture reports are opaque handles released with their `_free`
//! functions; strings returned by this library are released with
//! [`mills_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mills::bounds::{self, BoundId, ComparisonRow, Side};
use mills::inverse::{self, ConjectureReport, Estimate};
use mills::{gauss, verify, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MillsStatus {
    Ok = 0,
    /// Argument outside the mathematical domain.
    Domain = 1,
    /// Bound evaluated outside its proven validity interval without `force`.
    Validity = 2,
    /// No sign change on the search interval.
    Bracket = 3,
    /// Target not attained by the bound on its validity interval.
    Unattainable = 4,
    NoConvergence = 5,
    /// Invalid parameters (ranges, identifiers, counts).
    Config = 6,
    NullPointer = 7,
    Panic = 8,
}

/// Bound identifiers, matching the catalog order.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MillsBoundId {
    GordonLower = 0,
    GordonUpper = 1,
    BsLower = 2,
    BsUpper = 3,
    Thm3Lower = 4,
    Thm3Upper = 5,
    CorollaryLower = 6,
    CorollaryUpper = 7,
}

/// Closed-form inverse estimates.
#[repr(u32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MillsEstimate {
    Low1 = 0,
    Low2 = 1,
    Upp = 2,
}

/// Catalog metadata for one bound. `name` points to static storage.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct MillsBoundInfo {
    pub id: u32,
    /// 0 for a lower bound, 1 for an upper bound.
    pub side: u32,
    pub validity_lo: f64,
    pub validity_hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
    pub name: *const c_char,
}

/// One bound inside a comparison row.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct MillsBoundEntry {
    pub value: f64,
    pub log_value: f64,
    pub relative_error: f64,
    pub in_validity: bool,
    pub holds: bool,
}

/// Opaque comparison row.
pub struct MillsComparisonRow(ComparisonRow);

/// Opaque conjecture report.
pub struct MillsConjectureReport(ConjectureReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn status_of(error: &Error) -> MillsStatus {
    match error {
        Error::Domain { .. } => MillsStatus::Domain,
        Error::Validity { .. } => MillsStatus::Validity,
        Error::Bracket { .. } => MillsStatus::Bracket,
        Error::Unattainable { .. } => MillsStatus::Unattainable,
        Error::NoConvergence { .. } => MillsStatus::NoConvergence,
        Error::Config(_) => MillsStatus::Config,
    }
}

/// Runs `body`, converting errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), MillsStatus>) -> MillsStatus {
    set_last_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MillsStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            MillsStatus::Panic
        }
    }
}

fn check<T>(result: mills::Result<T>) -> Result<T, MillsStatus> {
    result.map_err(|e| {
        set_last_error(&e.to_string());
        status_of(&e)
    })
}

fn write<T>(out: *mut T, value: T) -> Result<(), MillsStatus> {
    if out.is_null() {
        set_last_error("output pointer is null");
        return Err(MillsStatus::NullPointer);
    }
    // SAFETY: non-null, and the caller guarantees it points to writable storage for T.
    unsafe { out.write(value) };
    Ok(())
}

fn bound_id(raw: u32) -> Result<BoundId, MillsStatus> {
    BoundId::from_index(raw).ok_or_else(|| {
        set_last_error(&format!("unknown bound id {raw}"));
        MillsStatus::Config
    })
}

fn estimate(raw: u32) -> Result<Estimate, MillsStatus> {
    Estimate::ALL.get(raw as usize).copied().ok_or_else(|| {
        set_last_error(&format!("unknown estimate {raw}"));
        MillsStatus::Config
    })
}

fn static_name(id: BoundId) -> &'static CStr {
    match id {
        BoundId::GordonLower => c"gordon_lower",
        BoundId::GordonUpper => c"gordon_upper",
        BoundId::BsLower => c"bs_lower",
        BoundId::BsUpper => c"bs_upper",
        BoundId::Thm3Lower => c"thm3_lower",
        BoundId::Thm3Upper => c"thm3_upper",
        BoundId::CorollaryLower => c"corollary_lower",
        BoundId::CorollaryUpper => c"corollary_upper",
    }
}

/// Message describing the last failure on this thread, or an empty string.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mills_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Mill's ratio `R(x)` for `0 <= x <= 40`.
#[no_mangle]
pub extern "C" fn mills_mills_ratio(x: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(gauss::mills_ratio(x))?))
}

/// Tail integral `M(x)`; either out-pointer may be null.
#[no_mangle]
pub extern "C" fn mills_tail_integral(
    x: f64,
    out_linear: *mut f64,
    out_log: *mut f64,
) -> MillsStatus {
    guard(|| {
        let m = check(gauss::tail_integral(x))?;
        if !out_linear.is_null() {
            write(out_linear, m.linear)?;
        }
        if !out_log.is_null() {
            write(out_log, m.log_value)?;
        }
        Ok(())
    })
}

/// `Q(x)`; either out-pointer may be null.
#[no_mangle]
pub extern "C" fn mills_q_value(x: f64, out_linear: *mut f64, out_log: *mut f64) -> MillsStatus {
    guard(|| {
        let q = check(gauss::q_value(x))?;
        if !out_linear.is_null() {
            write(out_linear, q.linear)?;
        }
        if !out_log.is_null() {
            write(out_log, q.log_value)?;
        }
        Ok(())
    })
}

/// Exact inverse Q-function for `1e-300 <= alpha <= 0.5`.
#[no_mangle]
pub extern "C" fn mills_inverse_q(alpha: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(gauss::inverse_q(alpha))?))
}

#[no_mangle]
pub extern "C" fn mills_bound_count() -> usize {
    BoundId::ALL.len()
}

#[no_mangle]
pub extern "C" fn mills_bound_info(bound: u32, out: *mut MillsBoundInfo) -> MillsStatus {
    guard(|| {
        let id = bound_id(bound)?;
        let spec = bounds::spec(id);
        write(
            out,
            MillsBoundInfo {
                id: bound,
                side: match spec.side {
                    Side::Lower => 0,
                    Side::Upper => 1,
                },
                validity_lo: spec.proven_validity.lo,
                validity_hi: spec.proven_validity.hi,
                lo_open: spec.proven_validity.lo_open,
                hi_open: spec.proven_validity.hi_open,
                name: static_name(id).as_ptr(),
            },
        )
    })
}

/// Value of a bound at `x`; `force` allows evaluation outside the proven interval.
#[no_mangle]
pub extern "C" fn mills_evaluate_bound(
    bound: u32,
    x: f64,
    force: bool,
    out: *mut f64,
) -> MillsStatus {
    guard(|| {
        write(
            out,
            check(bounds::evaluate_bound(bound_id(bound)?, x, force))?,
        )
    })
}

/// Compares `M(x)` with `count` bounds. The row must be released with
/// [`mills_comparison_free`].
///
/// # Safety
/// `bounds` must point to `count` readable `uint32_t` values.
#[no_mangle]
pub unsafe extern "C" fn mills_compare_at(
    x: f64,
    bounds: *const u32,
    count: usize,
    out: *mut *mut MillsComparisonRow,
) -> MillsStatus {
    guard(|| {
        if bounds.is_null() && count > 0 {
            set_last_error("bounds pointer is null");
            return Err(MillsStatus::NullPointer);
        }
        let raw = if count == 0 {
            &[][..]
        } else {
            // SAFETY: non-null and the caller guarantees `count` readable elements.
            unsafe { std::slice::from_raw_parts(bounds, count) }
        };
        let ids = raw
            .iter()
            .map(|&b| bound_id(b))
            .collect::<Result<Vec<_>, _>>()?;
        let row = check(bounds::compare_at(x, &ids))?;
        write(out, Box::into_raw(Box::new(MillsComparisonRow(row))))
    })
}

/// # Safety
/// `row` must be a live handle from [`mills_compare_at`].
#[no_mangle]
pub unsafe extern "C" fn mills_comparison_reference(
    row: *const MillsComparisonRow,
    out: *mut f64,
) -> MillsStatus {
    guard(|| {
        // SAFETY: the caller guarantees `row` is null or a live handle.
        let row = unsafe { row.as_ref() }.ok_or(MillsStatus::NullPointer)?;
        write(out, row.0.reference)
    })
}

/// # Safety
/// `row` must be a live handle from [`mills_compare_at`].
#[no_mangle]
pub unsafe extern "C" fn mills_comparison_ordering_ok(
    row: *const MillsComparisonRow,
    out: *mut bool,
) -> MillsStatus {
    guard(|| {
        // SAFETY: the caller guarantees `row` is null or a live handle.
        let row = unsafe { row.as_ref() }.ok_or(MillsStatus::NullPointer)?;
        write(out, row.0.ordering_ok)
    })
}

/// Entry for `bound`; fails with `MILLS_STATUS_CONFIG` if the bound was not requested.
///
/// # Safety
/// `row` must be a live handle from [`mills_compare_at`].
#[no_mangle]
pub unsafe extern "C" fn mills_comparison_entry(
    row: *const MillsComparisonRow,
    bound: u32,
    out: *mut MillsBoundEntry,
) -> MillsStatus {
    guard(|| {
        // SAFETY: the caller guarantees `row` is null or a live handle.
        let row = unsafe { row.as_ref() }.ok_or(MillsStatus::NullPointer)?;
        let id = bound_id(bound)?;
        let e = row.0.get(id).ok_or_else(|| {
            set_last_error(&format!("{id} was not part of the comparison"));
            MillsStatus::Config
        })?;
        write(
            out,
            MillsBoundEntry {
                value: e.value,
                log_value: e.log_value,
                relative_error: e.relative_error,
                in_validity: e.in_validity,
                holds: e.holds,
            },
        )
    })
}

/// # Safety
/// `row` must be null or a handle from [`mills_compare_at`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mills_comparison_free(row: *mut MillsComparisonRow) {
    if !row.is_null() {
        // SAFETY: allocated by Box::into_raw in mills_compare_at.
        drop(unsafe { Box::from_raw(row) });
    }
}

#[no_mangle]
pub extern "C" fn mills_empirical_crossover(
    bound: u32,
    lo: f64,
    hi: f64,
    tol: f64,
    out: *mut f64,
) -> MillsStatus {
    guard(|| {
        write(
            out,
            check(bounds::empirical_crossover(bound_id(bound)?, lo, hi, tol))?,
        )
    })
}

#[no_mangle]
pub extern "C" fn mills_identity_residual(x: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(bounds::identity_residual(x))?))
}

#[no_mangle]
pub extern "C" fn mills_asymptotic_ratio(x: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(bounds::asymptotic_ratio(x))?))
}

#[no_mangle]
pub extern "C" fn mills_crossover_constant() -> f64 {
    bounds::crossover_constant()
}

#[no_mangle]
pub extern "C" fn mills_binary_entropy(p: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(inverse::binary_entropy(p))?))
}

/// Closed-form inverse estimate `which` (a `MillsEstimate`).
#[no_mangle]
pub extern "C" fn mills_estimate(which: u32, alpha: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(estimate(which)?.evaluate(alpha))?))
}

/// Certified one-sided bound on the inverse Q-function.
#[no_mangle]
pub extern "C" fn mills_invert_bound(bound: u32, alpha: f64, out: *mut f64) -> MillsStatus {
    guard(|| write(out, check(inverse::invert_bound(bound_id(bound)?, alpha))?))
}

/// Runs the conjecture scan. The report must be released with [`mills_report_free`].
#[no_mangle]
pub extern "C" fn mills_conjecture_scan(
    alpha_min: f64,
    alpha_max: f64,
    points_per_decade: usize,
    out: *mut *mut MillsConjectureReport,
) -> MillsStatus {
    guard(|| {
        let report = check(inverse::conjecture_scan(
            alpha_min,
            alpha_max,
            points_per_decade,
        ))?;
        write(out, Box::into_raw(Box::new(MillsConjectureReport(report))))
    })
}

fn report_ref<'a>(
    report: *const MillsConjectureReport,
) -> Result<&'a ConjectureReport, MillsStatus> {
    // SAFETY: callers of the public functions guarantee `report` is null or a live handle.
    unsafe { report.as_ref() }.map(|r| &r.0).ok_or_else(|| {
        set_last_error("report pointer is null");
        MillsStatus::NullPointer
    })
}

/// # Safety
/// `report` must be a live handle from [`mills_conjecture_scan`].
#[no_mangle]
pub unsafe extern "C" fn mills_report_grid_points(
    report: *const MillsConjectureReport,
    out: *mut usize,
) -> MillsStatus {
    guard(|| write(out, report_ref(report)?.grid.points))
}

/// # Safety
/// `report` must be a live handle from [`mills_conjecture_scan`].
#[no_mangle]
pub unsafe extern "C" fn mills_report_holds_at(
    report: *const MillsConjectureReport,
    which: u32,
    out: *mut usize,
) -> MillsStatus {
    guard(|| write(out, report_ref(report)?.result(estimate(which)?).holds_at))
}

/// # Safety
/// `report` must be a live handle from [`mills_conjecture_scan`].
#[no_mangle]
pub unsafe extern "C" fn mills_report_violation_count(
    report: *const MillsConjectureReport,
    which: u32,
    out: *mut usize,
) -> MillsStatus {
    guard(|| {
        write(
            out,
            report_ref(report)?
                .result(estimate(which)?)
                .violations
                .len(),
        )
    })
}

/// Violation `index` of estimate `which`; any out-pointer may be null.
///
/// # Safety
/// `report` must be a live handle from [`mills_conjecture_scan`].
#[no_mangle]
pub unsafe extern "C" fn mills_report_violation(
    report: *const MillsConjectureReport,
    which: u32,
    index: usize,
    out_alpha: *mut f64,
    out_estimate: *mut f64,
    out_reference: *mut f64,
) -> MillsStatus {
    guard(|| {
        let result = report_ref(report)?.result(estimate(which)?);
        let v = result.violations.get(index).ok_or_else(|| {
            set_last_error(&format!("violation index {index} out of range"));
            MillsStatus::Config
        })?;
        for (out, value) in [
            (out_alpha, v.alpha),
            (out_estimate, v.estimate),
            (out_reference, v.reference),
        ] {
            if !out.is_null() {
                write(out, value)?;
            }
        }
        Ok(())
    })
}

/// The report as pretty-printed JSON, or null on failure. Release with
/// [`mills_string_free`].
///
/// # Safety
/// `report` must be a live handle from [`mills_conjecture_scan`].
#[no_mangle]
pub unsafe extern "C" fn mills_report_to_json(report: *const MillsConjectureReport) -> *mut c_char {
    let mut json = ptr::null_mut();
    let status = guard(|| {
        let text = serde_json::to_string_pretty(report_ref(report)?).map_err(|e| {
            set_last_error(&e.to_string());
            MillsStatus::Config
        })?;
        json = CString::new(text)
            .map_err(|_| MillsStatus::Config)?
            .into_raw();
        Ok(())
    });
    if status == MillsStatus::Ok {
        json
    } else {
        ptr::null_mut()
    }
}

/// # Safety
/// `report` must be null or a handle from [`mills_conjecture_scan`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mills_report_free(report: *mut MillsConjectureReport) {
    if !report.is_null() {
        // SAFETY: allocated by Box::into_raw in mills_conjecture_scan.
        drop(unsafe { Box::from_raw(report) });
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mills_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Runs the invariant suite on `grid_points` abscissae and stores the
/// process-style exit code (0 all hold, 1 violation) in `out_exit_code`.
#[no_mangle]
pub extern "C" fn mills_verify(grid_points: usize, out_exit_code: *mut i32) -> MillsStatus {
    guard(|| {
        if grid_points < 2 {
            set_last_error("grid_points must be at least 2");
            return Err(MillsStatus::Config);
        }
        let outcome = check(verify::run(&verify::VerifyConfig {
            grid_points,
            ..Default::default()
        }))?;
        write(out_exit_code, outcome.exit_code())
    })
}
