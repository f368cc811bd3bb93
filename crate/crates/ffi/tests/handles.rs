use std::ffi::{CStr, CString};
use std::ptr;

use distinguished_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = ds_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn new_form(label: &str, rank: u32, preset: &str) -> Result<*mut DsRealForm, DsStatus> {
    let mut f = ptr::null_mut();
    let s = unsafe { ds_real_form_new(c(label).as_ptr(), rank, c(preset).as_ptr(), &mut f) };
    if s == DsStatus::Ok {
        Ok(f)
    } else {
        Err(s)
    }
}

#[test]
fn verify_compact_f4() {
    let f = new_form("F4", 0, "compact").unwrap();
    unsafe {
        assert_eq!(ds_real_form_dim(f), 52);
        assert_eq!(ds_real_form_root_count(f), 48);
        assert_eq!(ds_real_form_single_count(f), 24);
        let mut r = ptr::null_mut();
        assert_eq!(ds_verify(f, c("auto").as_ptr(), &mut r), DsStatus::Ok);
        assert!(ds_report_verdict(r));
        assert_eq!(ds_report_spanning_rank(r), 52);
        assert_eq!(ds_report_failed_pairs(r), 0);
        let j = ds_report_json(r, true);
        let text = CStr::from_ptr(j).to_str().unwrap();
        assert!(text.contains("\"verdict\":true"));
        assert!(text.contains("\"stage\":\"S2\""));
        ds_string_free(j);
        ds_report_free(r);
        ds_real_form_free(f);
    }
}

#[test]
fn negative_control_reports_failed_pairs() {
    let f = new_form("B", 3, "compact").unwrap();
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(ds_verify(f, c("S0").as_ptr(), &mut r), DsStatus::Ok);
        assert!(!ds_report_verdict(r));
        assert!(ds_report_failed_pairs(r) > 0);
        ds_report_free(r);
        ds_real_form_free(f);
    }
}

#[test]
fn error_codes() {
    assert_eq!(new_form("Q7", 0, "compact").unwrap_err(), DsStatus::InvalidArgument);
    assert!(last_error().contains("Q7"));
    assert_eq!(new_form("B", 1, "compact").unwrap_err(), DsStatus::InvalidArgument);
    assert_eq!(new_form("A5", 0, "no-such-preset").unwrap_err(), DsStatus::InvalidArgument);

    let mut f = ptr::null_mut();
    let s = unsafe { ds_real_form_new(ptr::null(), 0, c("compact").as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::NullPointer);
    let s = unsafe { ds_real_form_new(c("A2").as_ptr(), 0, c("compact").as_ptr(), ptr::null_mut()) };
    assert_eq!(s, DsStatus::NullPointer);
    let bad = [0xffu8, 0];
    let s = unsafe { ds_real_form_new(bad.as_ptr().cast(), 0, c("compact").as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::InvalidUtf8);

    let f = new_form("B3", 0, "compact").unwrap();
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(ds_verify(f, c("S9").as_ptr(), &mut r), DsStatus::InvalidArgument);
        assert_eq!(ds_verify(f, c("Sstar").as_ptr(), &mut r), DsStatus::Unsupported);
        assert!(r.is_null());
        ds_real_form_free(f);
    }
}

#[test]
fn rejected_involution() {
    // Under the diagram flip of A4 some complex roots are not strongly
    // orthogonal to their images.
    let spec = c(r#"{"perm":[3,2,1,0],"signs":[1,1,1,1]}"#);
    let mut f = ptr::null_mut();
    let s = unsafe { ds_real_form_from_spec(c("A4").as_ptr(), 0, spec.as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::InvolutionRejected, "{}", last_error());

    // Not an automorphism of the Dynkin diagram at all.
    let spec = c(r#"{"perm":[1,0,2],"signs":[1,1,1]}"#);
    let s = unsafe { ds_real_form_from_spec(c("A3").as_ptr(), 0, spec.as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::InvalidArgument);

    let spec = c(r#"{"perm":[0,1,2],"signs":[1,1,1]}"#);
    let s = unsafe { ds_real_form_from_spec(c("A3").as_ptr(), 0, spec.as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::Ok);
    unsafe { ds_real_form_free(f) };

    let s = unsafe { ds_real_form_from_spec(c("A3").as_ptr(), 0, c("{").as_ptr(), &mut f) };
    assert_eq!(s, DsStatus::InvalidArgument);
}

#[test]
fn property_suites_through_the_abi() {
    let f = new_form("G2", 0, "compact").unwrap();
    unsafe {
        let mut ok = false;
        let mut json = ptr::null_mut();
        assert_eq!(ds_run_property_suites(f, 7, &mut ok, &mut json), DsStatus::Ok);
        assert!(ok);
        let text = CStr::from_ptr(json).to_str().unwrap();
        assert!(text.contains("g2-special-set-brackets"));
        ds_string_free(json);
        assert_eq!(ds_run_property_suites(f, 7, ptr::null_mut(), ptr::null_mut()), DsStatus::NullPointer);
        ds_real_form_free(f);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        ds_real_form_free(ptr::null_mut());
        ds_report_free(ptr::null_mut());
        ds_string_free(ptr::null_mut());
        assert_eq!(ds_real_form_dim(ptr::null()), 0);
        assert!(!ds_report_verdict(ptr::null()));
        assert!(ds_report_json(ptr::null(), true).is_null());
    }
    let v = unsafe { CStr::from_ptr(ds_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
