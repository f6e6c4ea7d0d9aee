use std::process::{Command, Output};

use serde_json::Value;

fn qsympat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsympat"))
        .args(args)
        .env_remove("QSYMPAT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = qsympat(args);
    assert!(
        o.status.success(),
        "{args:?} exited with {:?}: {}",
        o.status.code(),
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn lines(s: &str) -> Vec<&str> {
    s.lines().collect()
}

#[test]
fn avoiders_list_and_count() {
    let out = ok(&["avoiders", "-n", "3", "-p", "132,312"]);
    assert_eq!(lines(&out), ["123", "213", "231", "321", "count 4"]);
    assert_eq!(
        ok(&["avoiders", "-n", "5", "-p", "123,321", "--count"]).trim(),
        "0"
    );
    assert_eq!(
        lines(&ok(&["avoiders", "-n", "0", "-p", "132"])),
        ["()", "count 1"]
    );
    assert_eq!(
        ok(&["avoiders", "-n", "6", "-p", "132", "--count"]).trim(),
        "132"
    );
}

#[test]
fn avoiders_is_deterministic_across_thread_counts() {
    let one = ok(&["avoiders", "-n", "7", "-p", "1324", "--threads", "1"]);
    let four = ok(&["avoiders", "-n", "7", "-p", "1324", "--threads", "4"]);
    assert_eq!(one, four);
    assert_eq!(lines(&one).last(), Some(&"count 2762"));
}

#[test]
fn avoiders_json_and_tsv() {
    let v: Value =
        serde_json::from_str(&ok(&["avoiders", "-n", "3", "-p", "123", "--json"])).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 5);
    assert_eq!(v["patterns"], serde_json::json!(["123"]));
    let tsv = ok(&["avoiders", "-n", "2", "--tsv"]);
    assert_eq!(lines(&tsv), ["permutation\tdescents", "12\t{}", "21\t{1}"]);
    let v: Value =
        serde_json::from_str(&ok(&["avoiders", "-n", "4", "--count", "--json"])).unwrap();
    assert_eq!(v["count"], 24);
}

#[test]
fn qsym_schur_expansion() {
    let out = ok(&["qsym", "-n", "4", "-p", "132,213", "--schur"]);
    assert_eq!(lines(&out)[1], "s_4 + s_{31} + s_{211} + s_{1111}");
}

#[test]
fn qsym_reports_asymmetry() {
    let out = ok(&["qsym", "-n", "3", "-p", "132,231", "--schur"]);
    let l = lines(&out);
    assert_eq!(l[0], "F_{} + 2F_{1} + F_{1,2}");
    assert_eq!(l[1], "NOT SYMMETRIC");
    assert!(l[2].contains("{1}") && l[2].contains("{2}"), "{out}");
    let v: Value = serde_json::from_str(&ok(&[
        "qsym", "-n", "3", "-p", "132,231", "--schur", "--json",
    ]))
    .unwrap();
    assert_eq!(v["symmetric"], false);
    assert_eq!(v["schur"]["kind"], "not-in-span");
}

#[test]
fn qsym_empty_pattern_set_has_mass_n_factorial() {
    let v: Value = serde_json::from_str(&ok(&["qsym", "-n", "3", "-p", "", "--json"])).unwrap();
    let mass: i64 = v["q"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["coeff"].as_i64().unwrap())
        .sum();
    assert_eq!(mass, 6);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn qsym_json_round_trips_canonically() {
    let text = ok(&["qsym", "-n", "5", "-p", "123", "--schur", "--json"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let q: qsympat::QSymElement = serde_json::from_value(v["q"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&q).unwrap(), v["q"]);
    let s: qsympat::SymElement = serde_json::from_value(v["schur"].clone()).unwrap();
    let mut reser = serde_json::to_value(&s).unwrap();
    reser["kind"] = "in-span".into();
    assert_eq!(reser, v["schur"]);
    assert_eq!(serde_json::to_string(&v).unwrap(), text.trim());
}

#[test]
fn rsk_and_inverse() {
    assert_eq!(lines(&ok(&["rsk", "312"])), ["P=12/3", "Q=13/2"]);
    assert_eq!(ok(&["rsk", "12/3", "13/2"]).trim(), "312");
    let o = qsympat(&["rsk", "12/3", "12/34"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qsympat(&["rsk", "3112"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn knuth_class_and_closure() {
    assert_eq!(lines(&ok(&["knuth", "--class", "12/3"])), ["132", "312"]);
    assert_eq!(
        ok(&["knuth", "--closed", "12/3"]).trim(),
        "CLOSED (superstandard hook)"
    );
    assert!(ok(&["knuth", "--closed", "12/34"]).starts_with("NOT CLOSED"));
    assert_eq!(ok(&["knuth", "-p", "132,312"]).trim(), "CLOSED");
    assert!(ok(&["knuth", "-p", "132"]).starts_with("NOT CLOSED"));
}

#[test]
fn verify_named_checks() {
    let out = ok(&["verify", "table-s3", "--n-max", "8"]);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["check_id"], "table-s3");

    let out = ok(&["verify", "partial-shuffle", "-j", "5", "--n-max", "8"]);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["status"], "conjecture-consistent");
    assert_eq!(v["parameters"]["j"], 5);
}

#[test]
fn verify_quick_suite() {
    let out = ok(&["verify", "all", "--quick"]);
    let results: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(results.len(), qsympat::paperlab::quick_suite().len());
    for r in &results {
        let s = r["status"].as_str().unwrap();
        assert!(s == "pass" || s == "conjecture-consistent", "{r}");
    }
}

#[test]
fn verify_manifest_and_failure_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.json");
    std::fs::write(
        &path,
        r#"[{"check_id": "arc", "parameters": {"n_max": 5}},
            {"check_id": "shuffle-recursion", "parameters": {"left": "132", "right": "1", "n_max": 5}}]"#,
    )
    .unwrap();
    let o = qsympat(&["verify", "--manifest", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 2);

    std::fs::write(
        &path,
        r#"[{"check_id": "arc", "parameters": {"bogus": 1}}]"#,
    )
    .unwrap();
    let o = qsympat(&["verify", "--manifest", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&path, "not json").unwrap();
    let o = qsympat(&["verify", "--manifest", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_list() {
    let out = ok(&["verify", "--list"]);
    assert_eq!(out.lines().count(), qsympat::paperlab::CHECKS.len());
    assert!(out.contains("table-s3"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["avoiders", "-n", "3", "-p", "1x2"][..],
        &["avoiders", "-n", "3", "-p", "113"],
        &["avoiders", "-n", "13", "--count"],
        &["verify", "no-such-check"],
        &["verify"],
        &["verify", "table-s3", "--param", "nope=1"],
        &["qsym", "-n", "3", "--json", "--tsv"],
        &["avoiders", "-n", "3", "--threads", "0"],
        &["knuth", "--class", "13/2/4x"],
        &["frobnicate"],
    ] {
        let o = qsympat(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unsafe_n_lifts_cap() {
    assert_eq!(
        ok(&[
            "avoiders",
            "-n",
            "13",
            "-p",
            "123,321",
            "--count",
            "--unsafe-n"
        ])
        .trim(),
        "0"
    );
}

#[test]
fn cache_dir_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = ok(&[
        "qsym",
        "-n",
        "6",
        "-p",
        "231",
        "--schur",
        "--cache-dir",
        cache,
    ]);
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let o = Command::new(env!("CARGO_BIN_EXE_qsympat"))
        .args(["qsym", "-n", "6", "-p", "231", "--schur"])
        .env("QSYMPAT_CACHE", cache)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), first);
}

#[test]
fn probe_reports_rows() {
    let v: Value = serde_json::from_str(&ok(&[
        "probe", "-p", "132,231", "--n-min", "2", "--n-max", "4", "--json",
    ]))
    .unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["symmetric"], true);
    assert_eq!(rows[1]["symmetric"], false);
}
