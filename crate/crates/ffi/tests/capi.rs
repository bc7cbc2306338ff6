use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use toric_pick_ffi::*;

fn corpus(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn load(json: &str) -> (TpStatus, *mut TpPolytope) {
    let text = CString::new(json).unwrap();
    let mut p = ptr::null_mut();
    let status = unsafe { tp_polytope_from_json(text.as_ptr(), &mut p) };
    (status, p)
}

fn last_error() -> String {
    let e = tp_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_str().unwrap().to_owned()
}

fn take(s: *mut std::ffi::c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { tp_string_free(s) };
    v
}

#[test]
fn verify_pick_on_square() {
    let (status, p) = load(&corpus("square.json"));
    assert_eq!(status, TpStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tp_verify(p, TP_IDENTITY_PICK, &mut out) }, TpStatus::Ok);
    let report = take(out);
    assert_eq!(report["lhs"], "1");
    assert_eq!(report["rhs"], "1");
    assert_eq!(report["holds"], true);
    unsafe { tp_polytope_free(p) };
}

#[test]
fn every_identity_on_simplex() {
    let (_, p) = load(&corpus("simplex3.json"));
    for id in [
        TP_IDENTITY_PICK,
        TP_IDENTITY_TODD,
        TP_IDENTITY_FACE_TODD,
        TP_IDENTITY_TETRAHEDRON,
        TP_IDENTITY_SIGNATURE,
        TP_IDENTITY_U_INDEPENDENCE,
    ] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { tp_verify(p, id, &mut out) }, TpStatus::Ok, "identity {id}");
        assert_eq!(take(out)["holds"], true);
    }
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tp_verify(p, 99, &mut out) }, TpStatus::InvalidInput);
    assert!(out.is_null());
    unsafe { tp_polytope_free(p) };
}

#[test]
fn tetrahedron_rejects_square() {
    let (_, p) = load(&corpus("square.json"));
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tp_verify(p, TP_IDENTITY_TETRAHEDRON, &mut out) }, TpStatus::InvalidInput);
    assert!(last_error().contains("tetrahedron"));
    unsafe { tp_polytope_free(p) };
}

#[test]
fn non_delzant_is_invalid_input() {
    let (status, p) = load(&corpus("invalid/p112.json"));
    assert_eq!(status, TpStatus::InvalidInput);
    assert!(p.is_null());
    let msg = last_error();
    assert!(msg.contains("(0, 1)") && msg.contains("-2"), "{msg}");
}

#[test]
fn malformed_json() {
    let (status, p) = load("{\"name\": \"x\"");
    assert_eq!(status, TpStatus::InvalidInput);
    assert!(p.is_null());
}

#[test]
fn chern_numbers_and_counts() {
    let (_, p) = load(&corpus("cp2.json"));
    let mut c = 0i64;
    unsafe {
        assert_eq!(tp_chern_number(p, [1u32, 1].as_ptr(), 2, &mut c), TpStatus::Ok);
        assert_eq!(c, 9);
        assert_eq!(tp_chern_number(p, [2u32].as_ptr(), 1, &mut c), TpStatus::Ok);
        assert_eq!(c, 3);
        assert_eq!(tp_chern_number(p, [3u32].as_ptr(), 1, &mut c), TpStatus::InvalidInput);
        assert_eq!(tp_chern_number(p, ptr::null(), 0, &mut c), TpStatus::NullPointer);
    }
    let mut n = 0u64;
    assert_eq!(unsafe { tp_count_points(p, &mut n) }, TpStatus::Ok);
    assert_eq!(n, 3);
    unsafe { tp_polytope_free(p) };
}

#[test]
fn agw_report() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tp_verify_agw(&mut out) }, TpStatus::Ok);
    let report = take(out);
    assert_eq!(report["identity"], "agw");
    assert_eq!(report["holds"], true);
}

#[test]
fn error_is_cleared_on_success() {
    let _ = load("not json");
    assert!(!tp_last_error().is_null());
    let (status, p) = load(&corpus("square.json"));
    assert_eq!(status, TpStatus::Ok);
    assert!(tp_last_error().is_null());
    unsafe { tp_polytope_free(p) };
}

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/toric_pick.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "tp_polytope_from_json",
        "tp_polytope_free",
        "tp_polytope_dim",
        "tp_polytope_num_facets",
        "tp_verify",
        "tp_verify_agw",
        "tp_chern_number",
        "tp_count_points",
        "tp_string_free",
        "tp_last_error",
        "typedef struct TpPolytope TpPolytope",
        "TP_STATUS_IDENTITY_FAILS = 1",
        "TP_IDENTITY_FACE_TODD 2",
    ] {
        assert!(h.contains(name), "header is missing {name}");
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = target_dir().join("libtoric_pick_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let square = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/square.json");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <stdlib.h>
#include "toric_pick.h"

int main(int argc, char **argv) {
    FILE *f = fopen(argv[1], "rb");
    if (!f) return 10;
    char buf[4096];
    size_t n = fread(buf, 1, sizeof buf - 1, f);
    fclose(f);
    buf[n] = 0;
    TpPolytope *p = NULL;
    if (tp_polytope_from_json(buf, &p) != TP_STATUS_OK) return 11;
    size_t dim = 0;
    tp_polytope_dim(p, &dim);
    char *report = NULL;
    TpStatus s = tp_verify(p, TP_IDENTITY_PICK, &report);
    printf("%zu %d\n", dim, (int)s);
    tp_string_free(report);
    tp_polytope_free(p);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(Path::new(env!("CARGO_MANIFEST_DIR")).join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).arg(&square).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "2 0\n");
}
