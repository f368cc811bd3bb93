//! C ABI over the `distinguished` crate.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`DsStatus`]; on failure [`ds_last_error`] describes what went wrong on
//! the calling thread. Strings returned to the caller are released with
//! [`ds_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use distinguished::chevalley::StructureTable;
use distinguished::distsets::{auto_stage, build_stage, find_matched_pairs, find_singles, Stage};
use distinguished::involution::{build_involution, preset, RealForm, RealFormSpec};
use distinguished::rootsystem::RootSystem;
use distinguished::verifier::{check_distinguished, check_realness, run_all_suites, SuiteContext, VerificationReport};
use distinguished::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Unknown type, bad rank, unknown preset or stage, malformed JSON.
    InvalidArgument = 3,
    /// The involution does not define a real form.
    InvolutionRejected = 4,
    /// The requested construction does not exist for this algebra.
    Unsupported = 5,
    Internal = 6,
}

/// A complex simple Lie algebra together with a Cartan involution.
pub struct DsRealForm {
    form: RealForm,
    name: String,
}

/// The outcome of checking one candidate set.
pub struct DsReport {
    report: VerificationReport,
    real: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> DsStatus {
    match e {
        Error::InvolutionRejected { .. } => DsStatus::InvolutionRejected,
        Error::WrongSystem { .. } | Error::NotAnIop(..) | Error::OutsideSpan => DsStatus::Unsupported,
        Error::Io(_) | Error::DivisionByZero | Error::DimensionMismatch { .. } | Error::ProportionalRoots(..) => {
            DsStatus::Internal
        }
        _ => DsStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (DsStatus, String)>) -> DsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DsStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            DsStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (DsStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DsStatus, String)> {
    if p.is_null() {
        return Err((DsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (DsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn parse_stage(form: &RealForm, s: &str) -> Result<Stage, (DsStatus, String)> {
    if s.eq_ignore_ascii_case("auto") {
        Ok(auto_stage(form))
    } else {
        Stage::parse(s).map_err(lib_err)
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ds_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ds_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a real form from a type label ("F4", "B" with `rank`) and a preset
/// name ("compact", "painted", "painted:<node>", "quasi-split"). Pass
/// `rank = 0` when the label already carries the rank.
///
/// # Safety
/// `type_label` and `preset_name` must be null or NUL-terminated strings;
/// `out` must be null or point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_new(
    type_label: *const c_char,
    rank: u32,
    preset_name: *const c_char,
    out: *mut *mut DsRealForm,
) -> DsStatus {
    guard(|| {
        if out.is_null() {
            return Err((DsStatus::NullPointer, "out is null".into()));
        }
        let label = read_str(type_label, "type_label")?;
        let name = read_str(preset_name, "preset_name")?;
        let rank = (rank > 0).then_some(rank as usize);
        let table = StructureTable::build(RootSystem::from_label(label, rank).map_err(lib_err)?);
        let spec = preset(&table, name).map_err(lib_err)?;
        let form = build_involution(&table, &spec).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DsRealForm { form, name: name.to_string() }));
        Ok(())
    })
}

/// Like [`ds_real_form_new`] with the involution given as real form spec JSON
/// (`{"perm": [...], "signs": [...]}`).
///
/// # Safety
/// As for [`ds_real_form_new`], with `spec_json` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_from_spec(
    type_label: *const c_char,
    rank: u32,
    spec_json: *const c_char,
    out: *mut *mut DsRealForm,
) -> DsStatus {
    guard(|| {
        if out.is_null() {
            return Err((DsStatus::NullPointer, "out is null".into()));
        }
        let label = read_str(type_label, "type_label")?;
        let json = read_str(spec_json, "spec_json")?;
        let spec: RealFormSpec =
            serde_json::from_str(json).map_err(|e| (DsStatus::InvalidArgument, format!("spec JSON: {e}")))?;
        let rank = (rank > 0).then_some(rank as usize);
        let table = StructureTable::build(RootSystem::from_label(label, rank).map_err(lib_err)?);
        let name = spec.preset.clone().unwrap_or_else(|| "custom".into());
        let form = build_involution(&table, &spec).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DsRealForm { form, name }));
        Ok(())
    })
}

/// # Safety
/// `form` must be null or a handle from `ds_real_form_new`/`_from_spec`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_free(form: *mut DsRealForm) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Complex dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_dim(form: *const DsRealForm) -> usize {
    form.as_ref().map_or(0, |f| f.form.table.dim())
}

/// Number of roots, or 0 for a null handle.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_root_count(form: *const DsRealForm) -> usize {
    form.as_ref().map_or(0, |f| f.form.root_system().len())
}

/// Number of single roots, or 0 for a null handle.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_single_count(form: *const DsRealForm) -> usize {
    form.as_ref().map_or(0, |f| find_singles(&f.form).len())
}

/// Number of ordered matched pairs, or 0 for a null handle.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_real_form_matched_pair_count(form: *const DsRealForm) -> usize {
    form.as_ref().map_or(0, |f| find_matched_pairs(&f.form).len())
}

/// Builds the stage set (`"S0"`..`"S3"`, `"Sstar"` or `"auto"`) and checks
/// whether it is distinguished.
///
/// # Safety
/// `form` must be a live handle, `stage` a NUL-terminated string and `out`
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_verify(form: *const DsRealForm, stage: *const c_char, out: *mut *mut DsReport) -> DsStatus {
    guard(|| {
        let f = form.as_ref().ok_or((DsStatus::NullPointer, "form is null".to_string()))?;
        if out.is_null() {
            return Err((DsStatus::NullPointer, "out is null".into()));
        }
        let st = parse_stage(&f.form, read_str(stage, "stage")?)?;
        let set = build_stage(&f.form, st).map_err(lib_err)?;
        let report = check_distinguished(&f.form.table, &set, f.form.table.dim()).with_form(f.name.clone());
        let real = check_realness(&report);
        *out = Box::into_raw(Box::new(DsReport { report, real }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from `ds_verify` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ds_report_free(report: *mut DsReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// True iff the set is distinguished with every scalar real.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_report_verdict(report: *const DsReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.verdict && r.real)
}

/// Number of elements in the checked set.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_report_size(report: *const DsReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.size)
}

/// Real dimension spanned by the checked set.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_report_spanning_rank(report: *const DsReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.spanning_rank)
}

/// Ordered pairs whose bracket is not a multiple of a member.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_report_failed_pairs(report: *const DsReport) -> u64 {
    report.as_ref().map_or(0, |r| r.report.counts.failed)
}

/// The report as JSON; with `summary` the per-pair table is left out.
/// Returns null for a null handle. Free with [`ds_string_free`].
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ds_report_json(report: *const DsReport, summary: bool) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        set_error("report is null");
        return ptr::null_mut();
    };
    let rep = if summary { r.report.clone().summarized() } else { r.report.clone() };
    match serde_json::to_string(&rep) {
        Ok(s) => to_c_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// Runs every property suite. `all_passed` receives the overall outcome and
/// `out_json` (if not null) the per-suite reports as a JSON array.
///
/// # Safety
/// `form` must be a live handle; `all_passed` writable; `out_json` null or
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ds_run_property_suites(
    form: *const DsRealForm,
    seed: u64,
    all_passed: *mut bool,
    out_json: *mut *mut c_char,
) -> DsStatus {
    guard(|| {
        let f = form.as_ref().ok_or((DsStatus::NullPointer, "form is null".to_string()))?;
        if all_passed.is_null() {
            return Err((DsStatus::NullPointer, "all_passed is null".into()));
        }
        let ctx = SuiteContext::new(&f.form, seed);
        let reports = run_all_suites(&ctx);
        *all_passed = reports.iter().all(|r| r.passed());
        if !out_json.is_null() {
            let s = serde_json::to_string(&reports).map_err(|e| (DsStatus::Internal, e.to_string()))?;
            *out_json = to_c_string(s);
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
