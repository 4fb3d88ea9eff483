//! Exit-code contract and output-format checks against the built binary.
//! Kept to the F4 orbits so the suite stays quick.

use std::path::PathBuf;
use std::process::{Command, Output};

fn liecert() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liecert"))
}

fn run(args: &[&str]) -> Output {
    liecert().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn verify_single_orbit_exit_zero() {
    let out = run(&["verify", "--algebra", "F4", "--ordinal", "3"]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json report");
    assert_eq!(report["summary"]["total"], 1);
    assert_eq!(report["summary"]["certified"], 1);
    let orbit = &report["orbits"][0];
    assert_eq!(orbit["verdict"], "P_holds");
    assert_eq!(orbit["computed"]["dim_centralizer"], 12);
    assert_eq!(orbit["computed"]["m_r"], 6);
    let m = &orbit["matrices"][0];
    assert_eq!(m["rows"], 2);
    assert_eq!(m["cols"], 6);
    assert_eq!(m["num_params"], 2);
    assert_eq!(m["method"], "groebner");
}

#[test]
fn verify_e6_subregular_worked_example() {
    let out = run(&["verify", "--algebra", "E6", "--ordinal", "1"]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let orbit = &report["orbits"][0];
    assert_eq!(orbit["verdict"], "P_holds");
    assert_eq!(orbit["computed"]["dim_centralizer"], 8);
    assert_eq!(orbit["computed"]["dim_centre"], 5);
    assert_eq!(orbit["computed"]["m_r"], 16);
    assert_eq!(orbit["matrices"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_unknown_orbit_exit_two() {
    let out = run(&["verify", "--algebra", "E6", "--ordinal", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no such orbit"), "{err}");
}

#[test]
fn verify_ordinal_requires_algebra() {
    let out = run(&["verify", "--ordinal", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn list_counts() {
    let out = run(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout(&out);
    // Header plus twenty rows.
    assert_eq!(lines.lines().count(), 21);

    let out = run(&["list", "--algebra", "F4"]);
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn list_bad_catalog_path_exit_two() {
    let out = run(&["list", "--catalog", "/nonexistent/catalog.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn env_var_catalog_fallback() {
    let out = liecert()
        .args(["list"])
        .env("LIECERT_CATALOG", "/nonexistent/catalog.toml")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupt_catalog_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path: PathBuf = dir.path().join("bad.toml");
    std::fs::write(&path, "schema_version = 1\n").unwrap();
    let out = run(&["list", "--catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn markdown_report_narrates() {
    let out = run(&[
        "verify",
        "--algebra",
        "F4",
        "--ordinal",
        "1",
        "--format",
        "markdown",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let md = stdout(&out);
    assert!(md.contains("F4 orbit 1"), "{md}");
    assert!(md.contains("satisfies property (P)"));
    assert!(md.contains("Summary: 1/1"));
}

#[test]
fn out_file_written_atomically_and_deterministic_body() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("run1.json");
    let p2 = dir.path().join("run2.json");
    for p in [&p1, &p2] {
        let out = run(&[
            "verify",
            "--algebra",
            "F4",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(!p.with_extension("tmp").exists());
    }
    let strip = |path: &PathBuf| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        fn strip_key(v: &mut serde_json::Value) {
            match v {
                serde_json::Value::Object(m) => {
                    m.remove("elapsed_ms");
                    m.values_mut().for_each(strip_key);
                }
                serde_json::Value::Array(a) => a.iter_mut().for_each(strip_key),
                _ => {}
            }
        }
        strip_key(&mut v);
        serde_json::to_string_pretty(&v).unwrap()
    };
    assert_eq!(strip(&p1), strip(&p2));
}

#[test]
fn redundant_checks_flag_extends_matrix_list() {
    let without = run(&["verify", "--algebra", "F4", "--ordinal", "1"]);
    let with = run(&[
        "verify",
        "--algebra",
        "F4",
        "--ordinal",
        "1",
        "--redundant-checks",
    ]);
    let count = |o: &Output| {
        let v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["orbits"][0]["matrices"].as_array().unwrap().len()
    };
    assert_eq!(count(&without), 1);
    assert_eq!(count(&with), 2);
}

#[test]
fn selftest_exit_zero() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = stdout(&out);
    assert!(text.contains("suite jacobi: ok"));
    assert!(text.contains("suite groebner-vs-gcd: ok"));
}
