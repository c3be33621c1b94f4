//! Compiles and runs a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "subshift.h"

int main(void) {
    SubshiftHandle *h = NULL;
    if (subshift_new("type = \"sft\"\nforbidden = [\"11\"]\n", &h) != SUBSHIFT_STATUS_OK) return 1;
    uint64_t p = 0;
    if (subshift_block_complexity(h, 20, &p) != SUBSHIFT_STATUS_OK) return 2;
    CodeHandle *c = NULL;
    if (subshift_code_shift_power(h, -1, &c) != SUBSHIFT_STATUS_OK) return 3;
    int32_t found = 0; uint64_t b = 0; int64_t a = 0;
    if (subshift_order_mod_shift(h, c, 8, 24, &found, &b, &a) != SUBSHIFT_STATUS_OK) return 4;
    if (subshift_block_complexity(h, 0, &p) != SUBSHIFT_STATUS_INVALID_SPEC) return 5;
    printf("%llu %d %llu %lld %s\n", (unsigned long long)p, found, (unsigned long long)b, (long long)a,
           subshift_last_error() ? "err" : "none");
    subshift_code_free(c);
    subshift_free(h);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/<profile>.
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    tmp.parent().unwrap().join(profile)
}

#[test]
fn c_program_links_and_runs() {
    let header_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    assert!(header_dir.join("subshift.h").exists());
    let lib = target_dir().join("libsubshift_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    let exe = work.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "17711 1 1 1 err\n");
}
