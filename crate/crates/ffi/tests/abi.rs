use std::ffi::{CStr, CString};
use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::ptr;

use qlocality_ffi::*;

const H: f64 = FRAC_1_SQRT_2;
const A: [f64; 3] = [1.0, 0.0, 0.0];
const A_PERP: [f64; 3] = [0.0, 1.0, 0.0];
const B: [f64; 3] = [H, -H, 0.0];
const B_PERP: [f64; 3] = [-H, -H, 0.0];

fn last_error() -> String {
    let p = ql_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn singlet() -> *mut QlState {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ql_state_singlet(&mut s) }, QlStatus::Ok);
    s
}

#[test]
fn singlet_correlation_and_xy() {
    let s = singlet();
    let z = [0.0, 0.0, 1.0];
    let mut e = 0.0;
    assert_eq!(unsafe { ql_correlation(s, z.as_ptr(), z.as_ptr(), &mut e) }, QlStatus::Ok);
    assert!((e + 1.0).abs() < 1e-15);
    let (mut x, mut y) = (0.0, 0.0);
    let st = unsafe { ql_xy(s, A.as_ptr(), A_PERP.as_ptr(), B.as_ptr(), B_PERP.as_ptr(), &mut x, &mut y) };
    assert_eq!(st, QlStatus::Ok);
    assert!((x - SQRT_2).abs() < 1e-12 && (y + SQRT_2).abs() < 1e-12);
    let mut r = QlReport::default();
    assert_eq!(unsafe { ql_classify(x, y, 1e-9, &mut r) }, QlStatus::Ok);
    assert_eq!(r.region, QlRegion::QmNotLt as i32);
    assert!((r.margin_quantum_locality + 3.0).abs() < 1e-12);
    unsafe { ql_state_free(s) };
}

#[test]
fn werner_domain_and_ppt() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ql_state_werner(1.5, &mut s) }, QlStatus::Domain);
    assert!(s.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { ql_state_werner(0.3, &mut s) }, QlStatus::Ok);
    let mut sep = false;
    assert_eq!(unsafe { ql_is_separable_ppt(s, 1e-9, &mut sep) }, QlStatus::Ok);
    assert!(sep);
    unsafe { ql_state_free(s) };
    assert_eq!(unsafe { ql_state_werner(0.4, &mut s) }, QlStatus::Ok);
    assert_eq!(unsafe { ql_is_separable_ppt(s, 1e-9, &mut sep) }, QlStatus::Ok);
    assert!(!sep);
    unsafe { ql_state_free(s) };
}

#[test]
fn product_and_matrix_states() {
    let (ba, bb) = ([0.0, 0.0, 1.0], [0.0, 0.0, -1.0]);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ql_state_product(ba.as_ptr(), bb.as_ptr(), &mut s) }, QlStatus::Ok);
    let mut e = 0.0;
    assert_eq!(unsafe { ql_correlation(s, ba.as_ptr(), ba.as_ptr(), &mut e) }, QlStatus::Ok);
    assert_eq!(e, -1.0);
    unsafe { ql_state_free(s) };

    let long = [1.0, 1.0, 0.0];
    assert_eq!(unsafe { ql_state_product(long.as_ptr(), bb.as_ptr(), &mut s) }, QlStatus::Domain);

    let mut re = [0.0; 16];
    let im = [0.0; 16];
    for k in 0..4 {
        re[5 * k] = 0.25;
    }
    assert_eq!(unsafe { ql_state_from_matrix(re.as_ptr(), im.as_ptr(), &mut s) }, QlStatus::Ok);
    unsafe { ql_state_free(s) };
    re[0] = -0.25;
    re[5] = 0.75;
    assert_eq!(unsafe { ql_state_from_matrix(re.as_ptr(), im.as_ptr(), &mut s) }, QlStatus::InvalidState);
}

#[test]
fn null_pointers_rejected() {
    let z = [0.0, 0.0, 1.0];
    let mut e = 0.0;
    assert_eq!(unsafe { ql_correlation(ptr::null(), z.as_ptr(), z.as_ptr(), &mut e) }, QlStatus::NullPointer);
    assert!(last_error().contains("state"));
    let s = singlet();
    assert_eq!(unsafe { ql_correlation(s, ptr::null(), z.as_ptr(), &mut e) }, QlStatus::NullPointer);
    assert_eq!(unsafe { ql_correlation(s, z.as_ptr(), z.as_ptr(), ptr::null_mut()) }, QlStatus::NullPointer);
    assert_eq!(unsafe { ql_state_singlet(ptr::null_mut()) }, QlStatus::NullPointer);
    unsafe {
        ql_state_free(s);
        ql_state_free(ptr::null_mut());
        ql_model_free(ptr::null_mut());
    }
}

#[test]
fn invalid_settings_rejected() {
    let s = singlet();
    let (mut x, mut y) = (0.0, 0.0);
    let st = unsafe { ql_xy(s, A.as_ptr(), A.as_ptr(), B.as_ptr(), B_PERP.as_ptr(), &mut x, &mut y) };
    assert_eq!(st, QlStatus::InvalidArgument);
    assert!(last_error().contains("main . perp"), "{}", last_error());
    unsafe { ql_state_free(s) };
}

#[test]
fn maximize_singlet() {
    let s = singlet();
    let mut o = QlOptimum::default();
    assert_eq!(unsafe { ql_maximize(s, QlObjective::MaxAbsPm, 8, 0, &mut o) }, QlStatus::Ok);
    assert!((o.best_value - 2.0 * SQRT_2).abs() < 1e-6);
    let v = &o.settings;
    let (mut x, mut y) = (0.0, 0.0);
    let st = unsafe { ql_xy(s, v.as_ptr(), v[3..].as_ptr(), v[6..].as_ptr(), v[9..].as_ptr(), &mut x, &mut y) };
    assert_eq!(st, QlStatus::Ok);
    assert!(((x + y).abs().max((x - y).abs()) - o.best_value).abs() < 1e-12);
    unsafe { ql_state_free(s) };
}

#[test]
fn sample_is_seeded() {
    let s = singlet();
    let run = |seed| {
        let mut out = QlSample::default();
        let st = unsafe { ql_sample(s, A.as_ptr(), A_PERP.as_ptr(), B.as_ptr(), B_PERP.as_ptr(), 10_000, seed, &mut out) };
        assert_eq!(st, QlStatus::Ok);
        out
    };
    let (r1, r2) = (run(4), run(4));
    assert_eq!(r1, r2);
    assert_eq!(r1.counts.iter().sum::<u64>(), 40_000);
    assert!((r1.x - SQRT_2).abs() < 5.0 * r1.se_x);
    let mut out = QlSample::default();
    let st = unsafe { ql_sample(s, A.as_ptr(), A_PERP.as_ptr(), B.as_ptr(), B_PERP.as_ptr(), 0, 1, &mut out) };
    assert_eq!(st, QlStatus::InvalidArgument);
    unsafe { ql_state_free(s) };
}

#[test]
fn model_round_trip() {
    let json = CString::new(
        r#"{"kind":"lqt","causes":[{"weight":1.0,"bloch_a":[0,0,1],"bloch_b":[0,0,-0.5]}]}"#,
    )
    .unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { ql_model_from_json(json.as_ptr(), &mut m) }, QlStatus::Ok);
    let z = [0.0, 0.0, 1.0];
    let mut e = 0.0;
    assert_eq!(unsafe { ql_model_correlation(m, z.as_ptr(), z.as_ptr(), &mut e) }, QlStatus::Ok);
    assert_eq!(e, -0.5);
    unsafe { ql_model_free(m) };

    let bad = CString::new(r#"{"kind":"lqt","causes":[{"weight":0.5,"bloch_a":[0,0,1],"bloch_b":[0,0,0]}]}"#).unwrap();
    assert_eq!(unsafe { ql_model_from_json(bad.as_ptr(), &mut m) }, QlStatus::InvalidArgument);
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { ql_model_from_json(junk.as_ptr(), &mut m) }, QlStatus::InvalidArgument);
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qlocality.h")).unwrap();
    for name in [
        "ql_last_error",
        "ql_state_singlet",
        "ql_state_werner",
        "ql_state_product",
        "ql_state_from_matrix",
        "ql_state_free",
        "ql_correlation",
        "ql_xy",
        "ql_classify",
        "ql_is_separable_ppt",
        "ql_maximize",
        "ql_sample",
        "ql_model_from_json",
        "ql_model_correlation",
        "ql_model_free",
        "typedef struct QlState QlState",
        "QL_STATUS_NULL_POINTER = 1",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn c_program_links_against_header() {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap();
    let profile_dir = deps.parent().unwrap().parent().unwrap();
    // integration tests link the rlib; build the static archive explicitly
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let mut build = std::process::Command::new(cargo);
    build.args(["build", "-p", "qlocality-ffi", "--lib"]);
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success());
    let lib = profile_dir.join("libqlocality_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = std::process::Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let out = std::process::Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1.414214 -1.414214 2\n");
}
