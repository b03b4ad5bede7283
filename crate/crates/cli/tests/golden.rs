//! End-to-end golden-file tests of every subcommand.
//!
//! Reports are compared with the files in `tests/golden/` structurally, with
//! floats matched to a relative 1e−9 (the printed 17 digits are not portable
//! across platforms' libm). Run with `UPDATE_GOLDEN=1` to rewrite the files.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest().join("tests/fixtures").join(name).display().to_string()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_hypersphere")).args(args).output().expect("binary runs");
    Output {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn same(a: &Value, b: &Value, path: &str) -> Result<(), String> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if (x - y).abs() <= 1e-9 * x.abs().max(y.abs()) + 1e-13 {
                Ok(())
            } else {
                Err(format!("{path}: {x} != {y}"))
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            x.iter().zip(y).enumerate().try_for_each(|(i, (p, q))| same(p, q, &format!("{path}[{i}]")))
        }
        (Value::Object(x), Value::Object(y)) if x.keys().eq(y.keys()) => {
            x.iter().try_for_each(|(k, p)| same(p, &y[k], &format!("{path}.{k}")))
        }
        _ if a == b => Ok(()),
        _ => Err(format!("{path}: {a} != {b}")),
    }
}

fn check_golden(name: &str, text: &str) {
    let path = manifest().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    let (got, want): (Value, Value) = (serde_json::from_str(text).unwrap(), serde_json::from_str(&want).unwrap());
    if let Err(e) = same(&got, &want, "$") {
        panic!("{name} differs from its golden file at {e}\n{text}");
    }
}

fn report(o: &Output) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}\n{}", o.stdout, o.stderr))
}

#[test]
fn classify_cubic_z2z2() {
    let o = run(&["classify-cubic", "--in", &fixture("z2z2.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = report(&o);
    assert_eq!(r["class"], "Z2xZ2");
    assert_eq!(r["params"]["a5"].as_f64(), Some(1.0));
    check_golden("classify_cubic_z2z2.json", &o.stdout);
}

#[test]
fn classify_cubic_not_apolar() {
    let o = run(&["classify-cubic", "--in", &fixture("not_apolar.json")]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["error"], "NotAdmissible");
    check_golden("classify_cubic_not_apolar.json", &o.stdout);
}

#[test]
fn classify_isometry_rotation() {
    let o = run(&["classify-isometry", "--in", &fixture("rotation.json")]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = report(&o);
    assert_eq!(r["tag"], "Rotation");
    assert!((r["t"].as_f64().unwrap() - 0.7).abs() < 1e-12);
    check_golden("classify_isometry_rotation.json", &o.stdout);
}

#[test]
fn classify_isometry_rejects_non_isometries() {
    let o = run(&["classify-isometry", "--in", &fixture("notiso.json")]);
    assert_eq!(o.code, 1);
    let r = report(&o);
    assert_eq!((r["status"].as_str(), r["error"].as_str()), (Some("error"), Some("NotAnIsometry")));
    check_golden("classify_isometry_notiso.json", &o.stdout);
}

#[test]
fn classify_isometry_ambiguous() {
    let o = run(&["classify-isometry", "--in", &fixture("near_identity.json")]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["status"], "ambiguous");
    check_golden("classify_isometry_ambiguous.json", &o.stdout);
}

#[test]
fn scan_z2z2() {
    let o = run(&["scan", "--family", "z2z2", "--grid", "-0.2:0.2:2,0.5:1.0:2,0.5:1.0:1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let r = report(&o);
    assert_eq!(r["class_counts"]["Z2xZ2"], 4);
    check_golden("scan_z2z2.json", &o.stdout);
}

#[test]
fn scan_csv_export() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let o = run(&["scan", "--family", "z2", "--grid", "-0.2:0.2:2,0.5:0.5:1,0.0:0.0:1", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,v,w,class,J,kappa_hat,H,egregium");
    assert_eq!(lines.len(), 3);
    assert!(lines[1..].iter().all(|l| l.contains(",Z2B,")));
}

#[test]
fn generate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sampler.json");
    let f = file.to_str().unwrap();
    let o = run(&["generate", "--family", "warped-proper", "--base", "tzitzeica", "--out", f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&file).unwrap();
    check_golden("generate_warped_tzitzeica.json", &text);
    let o = run(&["verify", "--sampler", f, "--grid", "1.2:1.8:2,-0.3:0.3:2,-0.3:0.3:2", "--seed", "3"]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let r = report(&o);
    assert_eq!((r["class_fraction"].as_f64(), r["unimodular_classes_agree"].as_bool()), (Some(1.0), Some(true)));
    check_golden("verify_warped_tzitzeica.json", &o.stdout);
}

#[test]
fn verify_improper_family() {
    let o = run(&[
        "verify",
        "--family",
        "improper-b",
        "--base",
        "hyperbolic-paraboloid-graph",
        "--c",
        "0.5",
        "--grid",
        "0.8:1.2:2,-0.3:0.3:2,-0.3:0.3:1",
    ]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert_eq!(report(&o)["class_counts"]["SO11"], 4);
    check_golden("verify_improper_b.json", &o.stdout);
}

#[test]
fn verify_polynomial_fixture_curve() {
    // (t², √2 t) over the two-sheeted hyperboloid: an improper paraboloid (K ≡ 0),
    // so the advertised SO(2) class is not found and validation fails.
    let o = run(&[
        "verify",
        "--family",
        "warped-proper",
        "--base",
        "two-sheet-hyperboloid",
        "--curve",
        "poly:0,0,1;0,1.4142135623730951",
        "--grid",
        "0.8:1.2:2,-0.3:0.3:1,-0.3:0.3:1",
    ]);
    assert_eq!(o.code, 1, "{}{}", o.stdout, o.stderr);
    let r = report(&o);
    assert_eq!(r["class_counts"]["FullSO12"], 2);
    assert!(r["residuals"]["curve"].as_f64().unwrap() < 1e-12);
    check_golden("verify_fixture_curve.json", &o.stdout);
}

#[test]
fn generate_rejects_illegal_parameters() {
    let o = run(&["generate", "--family", "improper-a", "--c", "-1"]);
    assert_eq!(o.code, 1);
    assert_eq!(report(&o)["error"], "IllegalParameter");
    check_golden("generate_illegal.json", &o.stdout);
}

#[test]
fn s3_solve_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let field = dir.path().join("field.csv");
    let f = field.to_str().unwrap();
    let o = run(&["s3-solve", "--case", "h-1-gen", "--grid", "9", "--bc", &fixture("bc_h-1.csv"), "--field", f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    check_golden("s3_solve_h-1-gen.json", &o.stdout);
    let text = std::fs::read_to_string(&field).unwrap();
    assert!(text.starts_with("# {\"case\":\"h-1-gen\""));
    assert_eq!(text.lines().count(), 2 + 81);
    let o = run(&["s3-check", "--in", f]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    check_golden("s3_check_h-1-gen.json", &o.stdout);
    // A tighter tolerance than the solve reached fails validation.
    let o = run(&["s3-check", "--in", f, "--tol", "1e-12"]);
    assert_eq!(o.code, 1);
}

#[test]
fn s3_solve_default_boundary_and_failure() {
    let o = run(&["s3-solve", "--case", "h-1-ex", "--grid", "5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    check_golden("s3_solve_h-1-ex_constant.json", &o.stdout);
    let o = run(&["s3-solve", "--case", "h0-ex", "--grid", "9", "--tol", "1e-30", "--max-sweeps", "40"]);
    assert_eq!(o.code, 1);
    let r = report(&o);
    assert_eq!((r["error"].as_str(), r["sweeps"].as_u64()), (Some("DidNotConverge"), Some(40)));
    check_golden("s3_solve_did_not_converge.json", &o.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: [&[&str]; 7] = [
        &["bogus"],
        &["scan", "--family", "z2z2", "--bogus"],
        &["scan", "--family", "nope"],
        &["s3-solve", "--case", "h2-gen"],
        &["classify-cubic", "--in", "/nonexistent/form.json"],
        &["scan", "--family", "z2z2", "--grid", "1:2"],
        &["classify-cubic"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(o.code, 2, "{args:?}: {}", o.stdout);
        assert!(o.stdout.is_empty() && !o.stderr.is_empty(), "{args:?}");
    }
    let o = run(&["classify-cubic", "--in", &fixture("rotation.json")]);
    assert_eq!(o.code, 2, "wrong document shape is a parse error");
    let o = run(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("s3-solve"));
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--family", "z2", "--grid", "-0.2:0.2:3,0.5:0.5:1,0.0:0.0:1"];
    let a = run(&args);
    let b = run(&args);
    let mut threaded: Vec<&str> = args.to_vec();
    threaded.extend(["--threads", "2"]);
    let c = run(&threaded);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&["classify-cubic", "--in", &fixture("z2z2.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let direct = run(&["classify-cubic", "--in", &fixture("z2z2.json")]);
    assert_eq!(std::fs::read_to_string(Path::new(&path)).unwrap(), direct.stdout);
}
