use std::ffi::{CStr, CString};
use std::ptr;

use crosscap_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    crosscap_string_free(s);
    out
}

fn last_error() -> String {
    let p = crosscap_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn presentation_round_trip() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(crosscap_presentation_new(4, 1, &mut p), CrosscapStatus::Ok);
        assert_eq!(crosscap_presentation_generator_count(p), 8);
        assert_eq!(crosscap_presentation_relator_count(p), 18);

        let mut json = ptr::null_mut();
        assert_eq!(
            crosscap_presentation_emit(p, CrosscapFormat::Json, &mut json),
            CrosscapStatus::Ok
        );
        let json = CString::new(take(json)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(
            crosscap_presentation_from_json(json.as_ptr(), &mut q),
            CrosscapStatus::Ok
        );
        assert_eq!(crosscap_presentation_relator_count(q), 18);

        let mut report = ptr::null_mut();
        assert_eq!(
            crosscap_verify_presentation(q, 0, &mut report),
            CrosscapStatus::Ok
        );
        assert!(take(report).contains("\"Verified\""));

        crosscap_presentation_free(p);
        crosscap_presentation_free(q);
    }
}

#[test]
fn small_genus_order_and_h1() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(crosscap_presentation_new(2, 0, &mut p), CrosscapStatus::Ok);
        let mut n = 0usize;
        assert_eq!(
            crosscap_presentation_order(p, 1000, &mut n),
            CrosscapStatus::Ok
        );
        assert_eq!(n, 4);
        let mut h = ptr::null_mut();
        assert_eq!(crosscap_presentation_h1(p, &mut h), CrosscapStatus::Ok);
        assert_eq!(take(h), r#"{"free_rank":0,"torsion":[2,2]}"#);
        assert_eq!(
            crosscap_presentation_order(p, 2, &mut n),
            CrosscapStatus::LimitExceeded
        );
        crosscap_presentation_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            crosscap_presentation_new(1, 3, &mut p),
            CrosscapStatus::Domain
        );
        assert!(p.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            crosscap_presentation_new(3, 1, ptr::null_mut()),
            CrosscapStatus::NullArgument
        );
        assert_eq!(
            crosscap_presentation_emit(ptr::null(), CrosscapFormat::Text, &mut ptr::null_mut()),
            CrosscapStatus::NullArgument
        );

        let bad = CString::new("a1^2*u1").unwrap();
        let mut out = ptr::null_mut();
        let st = crosscap_word_reduce(bad.as_ptr(), &mut out);
        assert_eq!(st, CrosscapStatus::Parse);

        let good = CString::new("a1*u2*u2^-1*b1").unwrap();
        assert_eq!(
            crosscap_word_reduce(good.as_ptr(), &mut out),
            CrosscapStatus::Ok
        );
        assert_eq!(take(out), "a1*b1");
        assert!(crosscap_last_error().is_null());

        let mut report = ptr::null_mut();
        assert_eq!(
            crosscap_verify_surface(4, 1, 9, &mut report),
            CrosscapStatus::Domain
        );
        assert!(last_error().contains("tier"));
    }
}

#[test]
fn corrupted_relator_reports_failure() {
    let json = r#"{"genus":3,"boundary":1,"generators":["a1","a2","u1","u2"],
        "relators":[{"tag":"C4","params":[],"word":"a1*u1*a1*u1"}]}"#;
    let json = CString::new(json).unwrap();
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(
            crosscap_presentation_from_json(json.as_ptr(), &mut p),
            CrosscapStatus::Ok
        );
        let mut report = ptr::null_mut();
        assert_eq!(
            crosscap_verify_presentation(p, 0, &mut report),
            CrosscapStatus::VerificationFailed
        );
        assert!(take(report).contains("\"Refuted\""));
        crosscap_presentation_free(p);
    }
}

#[test]
fn replay_shipped_script() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/scripts/psi_d_g3n1.json"
    );
    let text = CString::new(std::fs::read_to_string(path).unwrap()).unwrap();
    unsafe {
        let mut end = ptr::null_mut();
        assert_eq!(crosscap_replay(text.as_ptr(), &mut end), CrosscapStatus::Ok);
        assert_eq!(take(end), "a1^-1*a2^-1*a1^-1*u2*u1");
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/crosscap.h"))
            .unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}
