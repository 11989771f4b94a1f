// SPDX-License-Identifier: Apache-2.0

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hyperlrc_ffi::*;

const CONFIG: &str = r#"{"field": "9", "curve": "x5+x3+2x", "subgroup": "U", "ell": 4, "t": 4}"#;

fn build(config: &str) -> (HlrcStatus, *mut HlrcCode) {
    let cfg = CString::new(config).unwrap();
    let mut code = ptr::null_mut();
    let s = unsafe { hlrc_code_build(cfg.as_ptr(), &mut code) };
    (s, code)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hlrc_last_error()) }.to_string_lossy().into_owned()
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { hlrc_string_free(s) };
    out
}

#[test]
fn build_encode_repair_verify() {
    let (s, code) = build(CONFIG);
    assert_eq!(s, HlrcStatus::Ok, "{}", last_error());
    let (mut n, mut k, mut r, mut q) = (0usize, 0usize, 0usize, 0u32);
    assert_eq!(unsafe { hlrc_code_params(code, &mut n, &mut k, &mut r, &mut q) }, HlrcStatus::Ok);
    assert_eq!((n, k, r, q), (16, 10, 3, 9));

    let msg: Vec<u32> = (0..k as u32).map(|i| (i * 5 + 1) % q).collect();
    let mut word = vec![0u32; n];
    assert_eq!(unsafe { hlrc_code_encode(code, msg.as_ptr(), k, word.as_mut_ptr(), n) }, HlrcStatus::Ok);
    for i in 0..n {
        let mut sym = u32::MAX;
        assert_eq!(unsafe { hlrc_code_repair(code, word.as_ptr(), n, i, &mut sym) }, HlrcStatus::Ok);
        assert_eq!(sym, word[i], "position {i}");
    }

    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { hlrc_verify(code, HlrcStrategy::Auto, 0, 0, 50, 7, &mut rep) }, HlrcStatus::Ok);
    let (mut v, mut d, mut b) = (HlrcVerdict::Rejected, 0i64, 0i64);
    assert_eq!(unsafe { hlrc_report_summary(rep, &mut v, &mut d, &mut b) }, HlrcStatus::Ok);
    assert_eq!((v, d, b), (HlrcVerdict::Optimal, 4, 4));
    let mut js = ptr::null_mut();
    assert_eq!(unsafe { hlrc_report_json(rep, &mut js) }, HlrcStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
    assert_eq!(json["schema"], 1);
    unsafe {
        hlrc_report_free(rep);
        hlrc_code_free(code);
    }
}

#[test]
fn csv_roundtrip_through_load() {
    let (_, code) = build(CONFIG);
    let mut csv = ptr::null_mut();
    assert_eq!(unsafe { hlrc_code_matrix_csv(code, &mut csv) }, HlrcStatus::Ok);
    let csv = CString::new(take(csv)).unwrap();
    let groups = CString::new("0 1 2 3 4\n5 6 7 8 9\n10 11 12 13 14\n15 16 17 18 19\n").unwrap();
    let mut loaded = ptr::null_mut();
    // 16 columns but groups name 20 positions
    assert_ne!(unsafe { hlrc_code_load(csv.as_ptr(), groups.as_ptr(), &mut loaded) }, HlrcStatus::Ok);
    assert!(loaded.is_null());
    assert!(!last_error().is_empty());
    unsafe { hlrc_code_free(code) };
}

#[test]
fn errors_are_reported() {
    let (s, code) = build(r#"{"field": "5^2:1,0,1", "curve": "x5+x"}"#);
    assert_eq!(s, HlrcStatus::Field);
    assert!(code.is_null());
    assert!(last_error().contains("5^2:1,0,1"));

    let (s, _) = build(r#"{"field": "9", "colour": 3}"#);
    assert_eq!(s, HlrcStatus::InvalidArgument);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hlrc_code_build(ptr::null(), &mut out) }, HlrcStatus::NullPointer);
    assert_eq!(unsafe { hlrc_code_params(ptr::null(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut()) }, HlrcStatus::NullPointer);

    let (_, code) = build(CONFIG);
    let bad = [9u32; 10];
    let mut word = vec![0u32; 16];
    assert_eq!(unsafe { hlrc_code_encode(code, bad.as_ptr(), 10, word.as_mut_ptr(), 16) }, HlrcStatus::InvalidArgument);
    assert_eq!(unsafe { hlrc_code_encode(code, bad.as_ptr(), 9, word.as_mut_ptr(), 16) }, HlrcStatus::InvalidArgument);
    unsafe { hlrc_code_free(code) };
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(hlrc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles and runs a C program against the generated header and the
/// static library. Skipped when no C compiler or archive is present.
#[test]
fn c_program_links_against_header() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include");
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| dir.join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libhyperlrc_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no archive at {} or no cc", lib.display());
        return;
    }
    let tmp = std::env::temp_dir().join(format!("hlrc_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("smoke.c");
    std::fs::write(&src, SMOKE).unwrap();
    let exe = tmp.join("smoke");
    let out = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "16 10 3 d=4");
    let _ = std::fs::remove_dir_all(&tmp);
}

const SMOKE: &str = r#"
#include <stdio.h>
#include "hyperlrc.h"

int main(void) {
    HlrcCode *code = NULL;
    const char *cfg = "{\"field\": \"9\", \"curve\": \"x5+x3+2x\", \"subgroup\": \"U\", \"ell\": 4, \"t\": 4}";
    if (hlrc_code_build(cfg, &code) != HLRC_STATUS_OK) {
        fprintf(stderr, "%s\n", hlrc_last_error());
        return 1;
    }
    size_t n, k, r;
    hlrc_code_params(code, &n, &k, &r, NULL);
    HlrcReport *rep = NULL;
    if (hlrc_verify(code, HLRC_STRATEGY_SUPPORT, 0, 0, 10, 1, &rep) != HLRC_STATUS_OK) return 1;
    HlrcVerdict v;
    int64_t d;
    hlrc_report_summary(rep, &v, &d, NULL);
    printf("%zu %zu %zu d=%lld\n", n, k, r, (long long)d);
    hlrc_report_free(rep);
    hlrc_code_free(code);
    return v == HLRC_VERDICT_OPTIMAL ? 0 : 1;
}
"#;
