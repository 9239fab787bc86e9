//! Compiles a small C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include "ramlock.h"

int main(void) {
    int64_t num = 0, den = 0;
    if (ramlock_bound(3, 1, 1, 1, &num, &den) != RAMLOCK_STATUS_OK) return 1;
    if (num != 5 || den != 2) return 2;
    if (ramlock_bound(3, 1, 2, 1, &num, &den) != RAMLOCK_STATUS_OUT_OF_RANGE) return 3;
    if (ramlock_last_error() == NULL) return 4;

    RamlockField *k = NULL;
    if (ramlock_field_new(3, 1, 8, &k) != RAMLOCK_STATUS_OK) return 5;
    RamlockModule *m = NULL;
    if (ramlock_module_bundled(k, "etale_twisted", &m) != RAMLOCK_STATUS_OK) return 6;
    uint64_t count = 0;
    if (ramlock_count_points(k, m, 0, 0, &count) != RAMLOCK_STATUS_OK || count != 1) return 7;
    if (ramlock_count_points(k, m, 1, 0, &count) != RAMLOCK_STATUS_OK || count != 3) return 8;
    ramlock_module_free(m);
    ramlock_field_free(k);
    printf("%lld/%lld\n", (long long)num, (long long)den);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<this test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libramlock_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_header");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("smoke.c");
    let bin = work.join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler runs");
    assert!(status.success(), "compiling the C smoke test failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C smoke test exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "5/2");
}
