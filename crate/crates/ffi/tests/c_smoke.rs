//! Compiles and runs a small C program against the generated header and
//! the static library, proving the ABI end to end.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::{env, fs};

const C_PROGRAM: &str = r#"
#include "relay_secrecy.h"
#include <math.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    RsParams *p = NULL;
    if (rs_params_defaults(&p) != RS_STATUS_OK) return 1;

    double a, b, r_l;
    if (rs_derived(p, &a, &b, &r_l) != RS_STATUS_OK) return 2;
    if (fabs(a - 90.0) > 1e-12 || fabs(b - 1000.0) > 1e-9) return 3;
    if (fabs(r_l - 0.2558427881104495) > 1e-14) return 4;

    double raw, clamped;
    if (rs_secrecy_outage_capacity(p, 100.0 / 9.0, &raw, &clamped) != RS_STATUS_OK) return 5;
    if (fabs(raw - 19624.84504246801) > 1e-6) return 6;
    if (raw != clamped) return 7;

    double p_r, objective;
    RsRegime regime;
    if (rs_optimal_power_soc(p, &p_r, &objective, &regime) != RS_STATUS_OK) return 8;
    if (regime != RS_REGIME_SOURCE_LIMITED) return 9;
    if (fabs(p_r - 100.0 / 9.0) > 1e-12) return 10;

    RsMcEstimate est;
    if (rs_estimate_interception_probability(p, 10.0, 2000, 1, &est) != RS_STATUS_OK) return 11;
    if (est.n_trials != 2000 || est.seed != 1) return 12;

    RsStatus s = rs_interception_probability(p, 0.0, &raw);
    if (s != RS_STATUS_INVALID_RELAY_POWER) return 13;
    if (strlen(rs_status_message(s)) == 0) return 14;

    if (rs_min_antennas(p, NULL) != RS_STATUS_NULL_POINTER) return 15;

    rs_params_free(p);
    rs_params_free(NULL);
    puts("c smoke ok");
    return 0;
}
"#;

fn target_debug_dir() -> PathBuf {
    if let Ok(dir) = env::var("CARGO_TARGET_DIR") {
        return PathBuf::from(dir).join("debug");
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../target/debug")
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(
        header_dir.join("relay_secrecy.h").exists(),
        "header missing; build.rs should have generated it"
    );
    let lib_dir = target_debug_dir();
    assert!(
        lib_dir.join("librelay_secrecy_ffi.a").exists(),
        "static library not found at {}",
        lib_dir.display()
    );

    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    fs::write(&src, C_PROGRAM).unwrap();
    let exe = work.path().join("smoke");

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lrelay_secrecy_ffi")
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-lm")
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "smoke test exited with {:?}:\n{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c smoke ok");
}
