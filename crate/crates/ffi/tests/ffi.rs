use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tfsr_ffi::*;

fn owned(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tfsr_string_free(p) };
    s
}

fn last_error() -> String {
    let p = tfsr_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn catalog(name: &str) -> *mut TfsrGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { tfsr_graph_from_catalog(name.as_ptr(), &mut g) }, TfsrStatus::Ok);
    g
}

#[test]
fn petersen_invariants_through_handles() {
    let g = catalog("petersen");
    let mut n = 0usize;
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(tfsr_graph_vertex_count(g, &mut n), TfsrStatus::Ok);
        assert_eq!(n, 10);
        assert_eq!(tfsr_graph_rho(g, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "3/10");
        assert_eq!(tfsr_graph_a_value(g, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "1/10");
        assert_eq!(tfsr_optimize_weights(g, &mut s), TfsrStatus::Ok);
        let report = owned(s);
        assert!(report.contains("a*=1/10") && report.contains("weights=uniform"), "{report}");
        let mut passed = false;
        assert_eq!(tfsr_verify(g, TfsrSuite::All, &mut passed), TfsrStatus::Ok);
        assert!(passed);
        assert_eq!(tfsr_graph_to_graph6(g, &mut s), TfsrStatus::Ok);
        let g6 = CString::new(owned(s)).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(tfsr_graph_from_graph6(g6.as_ptr(), &mut h), TfsrStatus::Ok);
        assert_eq!(tfsr_graph_a_value(h, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "1/10");
        tfsr_graph_free(h);
        tfsr_graph_free(g);
    }
}

#[test]
fn bound_handles() {
    let mut b = ptr::null_mut();
    let mut s = ptr::null_mut();
    let rho = CString::new("11/50").unwrap();
    let width = CString::new("1e-12").unwrap();
    unsafe {
        assert_eq!(tfsr_bound_eval(rho.as_ptr(), &mut b), TfsrStatus::Ok);
        assert_eq!(tfsr_bound_piece(b, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "Krein");
        assert_eq!(tfsr_bound_exact(b, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "3/50");
        tfsr_bound_free(b);

        let rho = CString::new("0.27").unwrap();
        assert_eq!(tfsr_bound_eval(rho.as_ptr(), &mut b), TfsrStatus::Ok);
        assert_eq!(tfsr_bound_exact(b, &mut s), TfsrStatus::DomainError);
        assert_eq!(tfsr_bound_describe(b, width.as_ptr(), &mut s), TfsrStatus::Ok);
        assert!(owned(s).starts_with("value=[0.0926878188"));
        tfsr_bound_free(b);

        let rho = CString::new("1/2").unwrap();
        assert_eq!(tfsr_bound_eval(rho.as_ptr(), &mut b), TfsrStatus::InvalidInput);
        assert!(last_error().contains("1/2"));
    }
}

#[test]
fn errors_are_reported_not_raised() {
    let mut g = ptr::null_mut();
    let mut s = ptr::null_mut();
    let bad = CString::new("not graph6 at all").unwrap();
    let name = CString::new("no-such-graph").unwrap();
    unsafe {
        assert_eq!(tfsr_graph_from_graph6(bad.as_ptr(), &mut g), TfsrStatus::InvalidInput);
        assert!(!last_error().is_empty());
        assert_eq!(tfsr_graph_from_catalog(name.as_ptr(), &mut g), TfsrStatus::InvalidInput);
        assert_eq!(tfsr_graph_from_graph6(ptr::null(), &mut g), TfsrStatus::NullPointer);
        assert_eq!(tfsr_graph_rho(ptr::null(), &mut s), TfsrStatus::NullPointer);
        tfsr_graph_free(ptr::null_mut());
        tfsr_string_free(ptr::null_mut());

        let c6 = catalog("cycle-6");
        let w = CString::new("1/2,1/2").unwrap();
        assert_eq!(tfsr_graph_set_weights(c6, w.as_ptr()), TfsrStatus::InvalidInput);
        let mut passed = true;
        assert_eq!(tfsr_verify(c6, TfsrSuite::Identities, &mut passed), TfsrStatus::Ok);
        tfsr_graph_free(c6);

        let edge = CString::new("A_").unwrap();
        assert_eq!(tfsr_graph_from_graph6(edge.as_ptr(), &mut g), TfsrStatus::Ok);
        assert_eq!(tfsr_graph_a_value(g, &mut s), TfsrStatus::DomainError);
        assert_eq!(tfsr_optimize_weights(g, &mut s), TfsrStatus::DomainError);
        tfsr_string_free(s);
        tfsr_graph_free(g);
    }
    assert!(tfsr_last_error().is_null() || !last_error().is_empty());
}

#[test]
fn weights_can_be_replaced() {
    let g = catalog("c5");
    let w = CString::new("1/5,1/5,1/5,1/5,1/5").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(tfsr_graph_set_weights(g, w.as_ptr()), TfsrStatus::Ok);
        assert_eq!(tfsr_graph_a_value(g, &mut s), TfsrStatus::Ok);
        assert_eq!(owned(s), "1/5");
        tfsr_graph_free(g);
    }
}

#[test]
fn search_through_handles() {
    let cfg = CString::new("n_max = 6\nrho_max = 1/2\n").unwrap();
    let mut r = ptr::null_mut();
    let mut len = 0usize;
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(tfsr_search(cfg.as_ptr(), &mut r), TfsrStatus::Ok);
        assert_eq!(tfsr_search_results_len(r, &mut len), TfsrStatus::Ok);
        assert_eq!(len, 1);
        assert_eq!(tfsr_search_results_line(r, 0, &mut s), TfsrStatus::Ok);
        let line = owned(s);
        assert_eq!(line.split('\t').nth(1), Some("2/5"));
        assert_eq!(tfsr_search_results_line(r, 1, &mut s), TfsrStatus::IndexOutOfRange);
        tfsr_search_results_free(r);
        let bad = CString::new("n_max = zero").unwrap();
        assert_eq!(tfsr_search(bad.as_ptr(), &mut r), TfsrStatus::InvalidInput);
    }
}

#[test]
fn c_program_links_against_the_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("tfsr.h").exists());
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let lib = lib_dir.join("libtfsr_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = out_dir.join("smoke.c");
    let bin = out_dir.join("smoke");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "tfsr.h"
int main(void) {
    TfsrGraph *g = NULL;
    char *a = NULL;
    if (tfsr_graph_from_catalog("clebsch", &g) != TFSR_STATUS_OK) return 10;
    if (tfsr_graph_a_value(g, &a) != TFSR_STATUS_OK) return 11;
    int ok = strcmp(a, "1/8") == 0;
    tfsr_string_free(a);
    tfsr_graph_free(g);
    if (tfsr_graph_from_graph6("?", &g) == TFSR_STATUS_OK) return 12;
    if (tfsr_last_error() == NULL) return 13;
    printf("a=1/8 %s\n", ok ? "ok" : "bad");
    return ok ? 0 : 14;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "a=1/8 ok\n");
}
