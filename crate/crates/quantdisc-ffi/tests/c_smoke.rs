//! Compiles and runs a small C program against the generated header and the
//! built cdylib, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "quantdisc.h"

int main(void) {
    QdModel *model = NULL;
    if (qd_model_standardized(0.8, &model) != QD_OK) return 1;

    double d0 = 0.0, dq = 0.0, cond = 0.0;
    if (qd_d_original(model, &d0) != QD_OK) return 2;
    if (qd_d_quantized(model, QD_TERNARY, 0.0, &dq) != QD_OK) return 3;
    if (qd_condition(model, QD_TERNARY, 0.0, &cond) != QD_OK) return 4;
    if (!(dq > d0) || !(cond > 0.0)) return 5;

    QdSolverResult result;
    if (qd_solve_threshold(model, QD_BINARY, NULL, &result) != QD_OK) return 6;
    if (!result.condition_satisfied) return 7;
    if (result.tau_star < -0.2 || result.tau_star > 0.2) return 8;

    const double values[4] = {-1.5, -0.1, 0.1, 1.5};
    int8_t codes[4];
    if (qd_quantize(values, 4, QD_TERNARY, 0.5, codes) != QD_OK) return 9;
    if (codes[0] != -1 || codes[1] != 0 || codes[2] != 0 || codes[3] != 1) return 10;

    double err = -1.0;
    if (qd_quantization_error(values, 4, QD_TERNARY, 0.5, false, &err) != QD_OK) return 11;
    if (err < 0.0) return 12;

    qd_model_free(model);
    printf("c smoke ok: d0=%.6f dq=%.6f tau*=%.6f\n", d0, dq, result.tau_star);
    return 0;
}
"#;

fn target_debug_dir() -> PathBuf {
    let exe = std::env::current_exe().expect("test binary path");
    // target/debug/deps/<test> -> target/debug
    exe.parent()
        .and_then(|p| p.parent())
        .expect("deps dir has a parent")
        .to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = crate_dir.join("include");
    assert!(
        include_dir.join("quantdisc.h").exists(),
        "header not generated"
    );
    let lib_dir = target_debug_dir();
    assert!(
        lib_dir.join("libquantdisc_ffi.so").exists(),
        "cdylib not built at {}",
        lib_dir.display()
    );

    let work = tempfile::tempdir().expect("tempdir");
    let src = work.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).expect("write C source");
    let exe = work.path().join("smoke");

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-o")
        .arg(&exe)
        .arg(format!("-I{}", include_dir.display()))
        .arg(format!("-L{}", lib_dir.display()))
        .arg("-lquantdisc_ffi")
        .output()
        .expect("invoke cc");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .expect("run smoke binary");
    assert!(
        run.status.success(),
        "smoke exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    let stdout = String::from_utf8_lossy(&run.stdout);
    assert!(stdout.contains("c smoke ok"), "unexpected output: {stdout}");
}
