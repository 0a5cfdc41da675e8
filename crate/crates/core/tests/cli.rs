use std::path::{Path, PathBuf};

use kahler::cli::{run, EXIT_FAILED, EXIT_INVALID, EXIT_OK};
use kahler::table::read_field_csv;

fn kahler(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kahler").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const SMALL_GRADIENT: &str = "dim 3
axis 1 -4 4 24
axis 2 -4 4 24
axis 3 -4 4 24
component 1 : -2*x1*exp(-r2)
component 2 : -2*x2*exp(-r2)
component 3 : -2*x3*exp(-r2)
";

fn report_value(report: &str, section: &str, key: &str) -> String {
    let mut inside = false;
    for line in report.lines() {
        if line.starts_with('[') {
            inside = line == format!("[{section}]");
        } else if inside {
            if let Some(v) = line.strip_prefix(&format!("{key}: ")) {
                return v.to_string();
            }
        }
    }
    panic!("{section}/{key} missing from\n{report}");
}

#[test]
fn check_algebra_passes() {
    let (code, out, _) = kahler(&["check-algebra", "--n", "4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("PASS n=4"));
    assert!(out.ends_with("status: pass\n"));
}

#[test]
fn check_algebra_rejects_large_n() {
    let (code, _, err) = kahler(&["check-algebra", "--n", "40"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("code=E_DIM"));
}

#[test]
fn decompose_gradient() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "grad.fld", SMALL_GRADIENT);
    let out = dir.path().join("out");
    let (code, stdout, err) = kahler(&["decompose", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{stdout}{err}");
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert_eq!(report_value(&report, "run", "mode"), "full-space");
    assert_eq!(report_value(&report, "summary", "status"), "pass");
    let co: f64 = report_value(&report, "grade 1", "coclosed_relative").parse().unwrap();
    assert!(co < 0.05, "{co}");
    for name in ["closed.csv", "coclosed.csv", "harmonic.csv"] {
        let f = read_field_csv(&out.join(name)).unwrap();
        assert_eq!(f.grid().shape(), vec![24, 24, 24]);
    }
}

#[test]
fn reports_are_deterministic_and_tables_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "grad.fld", SMALL_GRADIENT);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for o in [&a, &b] {
        let (code, _, _) = kahler(&["decompose", "--input", input.to_str().unwrap(), "--out", o.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }
    for name in ["report.txt", "closed.csv", "coclosed.csv", "harmonic.csv"] {
        assert_eq!(std::fs::read(a.join(name)).unwrap(), std::fs::read(b.join(name)).unwrap(), "{name}");
    }
    // the closed table fed back in is a sampled field like any other
    let closed = a.join("closed.csv");
    let c = dir.path().join("c");
    let (code, _, err) = kahler(&[
        "decompose",
        "--input",
        closed.to_str().unwrap(),
        "--out",
        c.to_str().unwrap(),
        "--region",
        "4:19,4:19,4:19",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let report = std::fs::read_to_string(c.join("report.txt")).unwrap();
    assert_eq!(report_value(&report, "run", "mode"), "region");
    assert_eq!(report_value(&report, "run", "region"), "4:19,4:19,4:19");
    let harmonic = read_field_csv(&c.join("harmonic.csv")).unwrap();
    assert_eq!(harmonic.grid().shape(), vec![16, 16, 16]);
}

#[test]
fn mixed_grades_are_split() {
    let dir = tempfile::tempdir().unwrap();
    let input = Path::new(env!("CARGO_MANIFEST_DIR")).join("fields/vortex_mixed.fld");
    let out = dir.path().join("out");
    let (code, stdout, _) = kahler(&["decompose", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{stdout}");
    assert!(stdout.contains("grade 0:") && stdout.contains("grade 1:"));
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert_eq!(report_value(&report, "run", "grades"), "0,1");
    assert_eq!(report_value(&report, "grade 0", "closed_norm"), "0.0000000000000000e0");
    let h: f64 = report_value(&report, "grade 1", "harmonic_norm").parse().unwrap();
    assert_eq!(h, 0.0);
}

#[test]
fn syntax_error_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "bad.fld", "dim 3\naxis 1 0 1 4\naxis 2 0 1 4\naxis 3 0 1 4\ncomponent 1: x1 + * 2\n");
    let out = dir.path().join("out");
    let (code, _, err) = kahler(&["decompose", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("error code=E_SYNTAX line=5 column=19"), "{err}");
    assert!(!out.exists());
}

#[test]
fn bad_region_and_missing_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "grad.fld", SMALL_GRADIENT);
    let out = dir.path().join("out");
    let (code, _, err) = kahler(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--region",
        "0:40,0:3,0:3",
    ]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("code=E_REGION"), "{err}");
    let (code, _, err) = kahler(&["decompose", "--input", "/nonexistent.fld", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("code=E_IO"), "{err}");
}

#[test]
fn two_dimensional_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "flat.fld", "dim 2\naxis 1 0 1 5\naxis 2 0 1 5\ncomponent 1: x1\n");
    let out = dir.path().join("out");
    let (code, _, err) = kahler(&["decompose", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("code=E_DIM"), "{err}");
}

#[test]
fn tight_tolerance_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "grad.fld", SMALL_GRADIENT);
    let out = dir.path().join("out");
    let (code, stdout, _) = kahler(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--tol-rel",
        "1e-9",
    ]);
    assert_eq!(code, EXIT_FAILED);
    assert!(stdout.ends_with("status: fail\n"));
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert_eq!(report_value(&report, "summary", "status"), "fail");
}

#[test]
fn usage_errors() {
    assert_eq!(kahler(&["frobnicate"]).0, EXIT_INVALID);
    assert_eq!(kahler(&["decompose"]).0, EXIT_INVALID);
    let (code, _, err) = kahler(&["check-delta", "--self-cell", "sphere"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("code=E_ARGS"));
    let (code, out, _) = kahler(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("decompose"));
}

#[test]
fn check_delta_green_calculus() {
    let (code, out, _) = kahler(&["check-delta", "--points", "24"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = kahler(&["check-green"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = kahler(&["check-calculus", "--n", "3", "--fields", "3", "--ratio-points", "25"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("left-constant gap=2.000000"));
}

#[test]
fn boundary_check_curl() {
    let (code, out, _) = kahler(&["boundary-check", "--kind", "curl", "--points", "12,16"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.matches("PASS").count(), 3);
}
