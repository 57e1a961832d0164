//! Exit-code and output contract of the command-line interface.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polmux-otdr"))
}

#[test]
fn generate_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("seq.csv");
    let status = bin()
        .args(["generate", "--scheme", "cazac", "--size", "3", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("n,re_x,im_x,re_y,im_y"));
    assert_eq!(text.lines().count(), 2 + 64);
}

#[test]
fn invalid_scheme_exits_nonzero_with_usage_hint() {
    let output = bin()
        .args(["generate", "--scheme", "bogus", "--size", "3"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("bogus"));
    let hint = stderr.to_lowercase();
    assert!(hint.contains("usage") || hint.contains("help"));
}

#[test]
fn unknown_config_key_exits_two() {
    let status = bin()
        .args(["error-curve", "--set", "bogus_key=1"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_three() {
    let status = bin()
        .args(["tf", "--out-dir", "/proc/version"])
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn aliasing_run_produces_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = bin()
        .args([
            "aliasing",
            "--set",
            "cazac_m=4",
            "--set",
            "golay_k=4",
            "--set",
            "sweep_n=256",
            "--set",
            "lengths_m=200",
            "--out-dir",
        ])
        .arg(&out)
        .stdout(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["experiment"], "aliasing");
    assert_eq!(manifest["files"].as_array().unwrap().len(), 3);
}
