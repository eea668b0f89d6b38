//! Drives the `rr-verify` binary end to end: exit codes, report shape,
//! and byte-stable tables.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rr_verify(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rr-verify"))
        .args(args)
        .env("RR_VERIFY_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn reports(out: &Output) -> Vec<Value> {
    serde_json::from_slice::<Value>(&out.stdout).expect("JSON on stdout").as_array().expect("an array").clone()
}

#[test]
fn passing_checks_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--check", "a2-dag-example", "--system", "A2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = &reports(&out)[0];
    assert_eq!(report["status"], "pass");
    assert_eq!(report["max_discrepancy"], "0");
    assert_eq!(report["certified_cutoff"], "exact");

    let out = rr_verify(&["--check", "orthogonality", "--type", "A", "--rank", "1", "--window", "0"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["comparisons"], 1);

    let out = rr_verify(&["--check", "thefin0", "--system", "A1", "--qdeg", "8"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reports(&out)[0]["certified_cutoff"], "8");
}

#[test]
fn configuration_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--check", "no-such-check"][..],
        &["--check", "a1-closed-form", "--system", "A2"],
        &["--check", "generic-t", "--t", "five/seven"],
        &["--check", "xi-routes", "--route", "sideways"],
        &["--check", "xi-routes", "--route", "mixed-3", "--depth", "2"],
        &["--check", "thefin0", "--twist", "coset:7"],
        &["--check", "xi-routes", "--weight", "1,2"],
        &["--emit", "pictures"],
    ] {
        let out = rr_verify(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn a_failing_check_exits_one_and_fails_the_conjunction() {
    let dir = tempfile::tempdir().unwrap();
    // The literal mixed switch kernel does not reproduce the pairing.
    let args = ["--route", "mixed-literal-0", "--depth", "2", "--qdeg", "4", "--system", "A1"];
    let out = rr_verify(&[&["--check", "xi-routes"][..], &args].concat(), dir.path());
    assert_eq!(out.status.code(), Some(1));
    let report = &reports(&out)[0];
    assert_eq!(report["status"], "fail");
    assert_ne!(report["max_discrepancy"], "0");

    let out = rr_verify(&[&["--all"][..], &args].concat(), dir.path());
    assert_eq!(out.status.code(), Some(1));
    let all = reports(&out);
    let names: Vec<&str> = all.iter().map(|r| r["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(all.iter().filter(|r| r["status"] == "fail").count(), 1);
    assert!(all.iter().any(|r| r["name"] == "a2-dag-example" && r["status"] == "skipped"));
}

#[test]
fn all_checks_pass_on_a1() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--all", "--system", "A1", "--out", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("name,system,status,"));
    assert!(lines.all(|l| l.contains(",pass,") || l.contains(",skipped,")));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let strip = |out: Output| {
        let mut v = reports(&out);
        for r in &mut v {
            r.as_object_mut().unwrap().remove("elapsed_ms");
        }
        v
    };
    let args = ["--check", "generic-t", "--system", "A1", "--seed", "3", "--window", "2"];
    assert_eq!(strip(rr_verify(&args, dir.path())), strip(rr_verify(&args, dir.path())));
}

#[test]
fn emitted_tables_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["--emit", "epoly", "--system", "A2", "--window", "2"][..],
        &["--emit", "xi", "--system", "A1", "--qdeg", "4", "--out", "csv"],
        &["--emit", "slices", "--system", "A2", "--weight", "-1,0", "--depth", "1", "--qdeg", "3"],
        &["--emit", "demazure", "--system", "B2", "--window", "2", "--out", "csv"],
    ] {
        let first = rr_verify(args, dir.path());
        assert_eq!(first.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&first.stderr));
        let path = String::from_utf8(first.stdout).unwrap().trim().to_string();
        assert!(Path::new(&path).starts_with(dir.path()));
        let bytes = std::fs::read(&path).unwrap();
        let second = rr_verify(args, dir.path());
        assert_eq!(String::from_utf8(second.stdout).unwrap().trim(), path);
        assert_eq!(std::fs::read(&path).unwrap(), bytes, "{args:?}");
    }
}

#[test]
fn xi_table_from_zero_is_a_list_of_theta_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--emit", "xi", "--system", "A1", "--qdeg", "4"], dir.path());
    let path = String::from_utf8(out.stdout).unwrap().trim().to_string();
    let table: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    assert_eq!(table["header"]["system"], "A1");
    assert_eq!(table["header"]["cutoff"], 4);
    assert_eq!(table["header"]["version"], env!("CARGO_PKG_VERSION"));
    let rows = table["rows"].as_array().unwrap();
    // a ranges over |a| ≤ 4 (a²/4 ≤ 4), each with the single term q^{a²/4}.
    assert_eq!(rows.len(), 9);
    for row in rows {
        let a: i64 = row[1].as_str().unwrap().parse().unwrap();
        let expected = match a * a {
            0 => "1".to_string(),
            4 => "q".to_string(),
            n if n % 4 == 0 => format!("q^{}", n / 4),
            n => format!("q^({n}/4)"),
        };
        assert_eq!(row[3], format!("{expected} + O(q^4+)"), "a = {a}");
    }
}

#[test]
fn empty_window_gives_a_header_only_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--emit", "epoly", "--system", "A2", "--window", "-1", "--out", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let path = String::from_utf8(out.stdout).unwrap().trim().to_string();
    let text = std::fs::read_to_string(path).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["weight,family,h0,polynomial"]);
    assert!(text.contains("# system: A2"));
}

#[test]
fn the_a2_epoly_table_lists_the_reference_weights() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--emit", "epoly", "--system", "A2", "--window", "2"], dir.path());
    let path = String::from_utf8(out.stdout).unwrap().trim().to_string();
    let table: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    let rows = table["rows"].as_array().unwrap();
    for weight in ["-1,-1", "1,-2", "-1,2"] {
        assert!(rows.iter().any(|r| r[0] == weight && r[1] == "dag"), "{weight}");
    }
}

#[test]
fn list_names_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = rr_verify(&["--list"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.lines().any(|l| l.starts_with("thefin0 ")));
}
