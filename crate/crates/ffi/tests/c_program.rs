//! Compiles a small C program against the generated header and the static
//! library. Skipped when no C compiler is on the path.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "distinguished.h"

int main(void) {
    DsRealForm *form = NULL;
    if (ds_real_form_new("G2", 0, "compact", &form) != DS_STATUS_OK) return 10;
    DsReport *report = NULL;
    if (ds_verify(form, "auto", &report) != DS_STATUS_OK) return 11;
    if (!ds_report_verdict(report)) return 12;
    if (ds_report_size(report) != 21) return 13;
    char *json = ds_report_json(report, true);
    if (json == NULL || strstr(json, "\"Sstar\"") == NULL) return 14;
    ds_string_free(json);
    ds_report_free(report);
    ds_real_form_free(form);

    if (ds_real_form_new("X9", 0, "compact", &form) != DS_STATUS_INVALID_ARGUMENT) return 15;
    if (ds_last_error() == NULL) return 16;
    printf("ok\n");
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler found, skipping");
        return;
    }
    let lib = target_dir().join("libdistinguished_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&bin)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
