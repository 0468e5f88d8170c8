#![allow(clippy::excessive_precision)]

//! End-to-end checks of the command-line binary: documented invocations,
//! file formats, determinism, and exit codes.

use std::process::Command;

fn hitloc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hitloc"))
}

fn stdout_of(args: &[&str]) -> String {
    let out = hitloc().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cf_evaluates_the_documented_point() {
    let text = stdout_of(&[
        "cf",
        "--d",
        "3",
        "--lambda",
        "1",
        "--u",
        "1",
        "--omega-norm",
        "1.7320508",
    ]);
    let value: f64 = text.trim().parse().unwrap();
    // |omega| = sqrt(3) gives exp(-1).
    assert!((value - (-1.0f64).exp()).abs() < 1e-7, "got {value}");
}

#[test]
fn pdf_dispatches_the_cauchy_branch() {
    let text = stdout_of(&["pdf", "--d", "3", "--lambda", "1", "--u", "0", "--x", "0,0"]);
    let value: f64 = text.trim().parse().unwrap();
    assert!((value - 0.5 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn capacity_emits_the_expected_upper_bound() {
    let text = stdout_of(&[
        "capacity", "--d", "3", "--lambda", "1", "--u", "1", "--power", "100",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "d,lambda,u,P,upper,lower,gap,c_star");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let upper: f64 = row[4].parse().unwrap();
    assert!((upper - 4.0526862833656307).abs() < 1e-8, "upper {upper}");
    let c_star: f64 = row[7].parse().unwrap();
    assert!((c_star - (-0.5722865299186404)).abs() < 1e-8);
}

#[test]
fn entropy_sweep_has_cauchy_anchor_rows() {
    let text = stdout_of(&[
        "entropy-sweep",
        "--d",
        "2,3",
        "--lambda",
        "1",
        "--u-grid",
        "log:1e-2:1:3",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,lambda,u,h,method,error");
    // 3 grid rows + 1 trailing Cauchy row per dimension.
    assert_eq!(lines.len(), 1 + 2 * 4);
    let trailing: Vec<&str> = lines[4].split(',').collect();
    assert_eq!(trailing[0], "2");
    let u: f64 = trailing[2].parse().unwrap();
    assert_eq!(u, 0.0);
    let h: f64 = trailing[3].parse().unwrap();
    assert!((h - 2.5310242469692908).abs() < 1e-9);
    assert_eq!(trailing[4], "cauchy_closed_form");
}

#[test]
fn sample_writes_csv_and_sidecar_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    for path in [&path_a, &path_b] {
        let status = hitloc()
            .args([
                "sample",
                "--d",
                "3",
                "--lambda",
                "1",
                "--u",
                "1",
                "--count",
                "50",
                "--seed",
                "9",
                "--output",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(a, b, "identical flags and seed must be byte-identical");

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x1,x2");
    assert_eq!(lines.count(), 50);

    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.json")).unwrap()).unwrap();
    assert_eq!(meta["d"], 3);
    assert_eq!(meta["lambda"], 1.0);
    assert_eq!(meta["u"], 1.0);
    assert_eq!(meta["seed"], 9);
    assert_eq!(meta["count"], 50);
}

#[test]
fn offset_curve_ends_at_u_zero() {
    let text = stdout_of(&[
        "offset-curve",
        "--d",
        "2",
        "--lambda",
        "1",
        "--u-grid",
        "log:1e-3:1:3",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,lambda,u,offset");
    let last: Vec<&str> = lines.last().unwrap().split(',').collect();
    let u: f64 = last[2].parse().unwrap();
    assert_eq!(u, 0.0);
    let l0: f64 = last[3].parse().unwrap();
    assert!((l0 - (-1.1120857137646181)).abs() < 1e-9);
}

#[test]
fn validate_quick_run_exits_zero() {
    let out = hitloc()
        .args([
            "validate",
            "--seed",
            "7",
            "--count",
            "100000",
            "--sde-paths",
            "5000",
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["pass"].as_bool().unwrap(), "gate failed: {line}");
    }
}

#[test]
fn validate_negative_controls_fail_by_design() {
    // The mismatched gates must fail; a control that passed would count as
    // a violation and flip the exit code.
    let out = hitloc()
        .args([
            "validate",
            "--seed",
            "7",
            "--count",
            "100000",
            "--sde-paths",
            "5000",
            "--include-negative-controls",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let controls: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .filter(|v: &serde_json::Value| {
            v["check_name"].as_str().unwrap().starts_with("negative_control")
        })
        .collect();
    assert_eq!(controls.len(), 3);
    assert!(controls.iter().all(|v| v["pass"] == false));
}

#[test]
fn flag_errors_exit_with_code_2() {
    let out = hitloc().args(["cf", "--d", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = hitloc().args(["bogus-subcommand"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Domain-invalid values also count as flag errors.
    let out = hitloc()
        .args(["cf", "--d", "1", "--lambda", "1", "--u", "1", "--omega-norm", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
