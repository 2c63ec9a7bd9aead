use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn galchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galchar"))
        .args(args)
        .env_remove("GALCHAR_CACHE_DIR")
        .env(
            "XDG_CACHE_HOME",
            std::env::temp_dir().join("galchar-cli-tests"),
        )
        .output()
        .unwrap()
}

fn galchar_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_galchar"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn galois_irr_gl2_f3() {
    let v = stdout_json(&galchar(&[
        "galois-irr",
        "--n",
        "2",
        "--q",
        "3",
        "--d",
        "1",
    ]));
    assert_eq!(v["count"], 7);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 7);
    let v = stdout_json(&galchar(&["galois-classes", "--n", "2", "--q", "3"]));
    assert_eq!(v["count"], 7);
}

#[test]
fn admissible_d() {
    let v = stdout_json(&galchar(&["admissible-d", "--q", "2", "--n-max", "2"]));
    assert_eq!(v, serde_json::json!([1, 2, 3, 6]));
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = galchar(&[
        "verify",
        "--n-max",
        "2",
        "--q",
        "2",
        "--d",
        "1",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    let v = stdout_json(&o);
    assert_eq!(v["status"], "pass");
    for check in ["positivity", "selfdual", "axioms", "oracle"] {
        assert_eq!(v["checks"][check]["status"], "pass", "{check}");
    }
    let v = stdout_json(&galchar(&[
        "verify",
        "--n-max",
        "2",
        "--q",
        "3",
        "--checks",
        "axioms,oracle",
    ]));
    assert_eq!(v["status"], "pass");
    assert!(v["checks"].get("positivity").is_none());
}

#[test]
fn table_decompose_round_trip() {
    for (n, q, d) in [("2", "2", "1"), ("2", "3", "1"), ("2", "3", "2")] {
        let table = galchar(&["table", "--n", n, "--q", q, "--d", d]);
        assert!(table.status.success());
        let dec = stdout_json(&galchar_stdin(&["decompose"], &table.stdout));
        let results = dec["results"].as_array().unwrap();
        for (i, r) in results.iter().enumerate() {
            for (j, c) in r["coefficients"].as_array().unwrap().iter().enumerate() {
                let expected = if i == j { "1/1" } else { "0/1" };
                assert_eq!(c["coeffs"][0], expected);
                assert_eq!(c["order"], 1);
            }
            assert_eq!(r["nonnegative_integral"], true);
        }
    }
}

#[test]
fn decompose_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, galchar(&["table", "--n", "1", "--q", "3"]).stdout).unwrap();
    let dec = stdout_json(&galchar(&["decompose", "--input", path.to_str().unwrap()]));
    assert_eq!(dec["results"].as_array().unwrap().len(), 2);
}

#[test]
fn deterministic_output() {
    for args in [
        &["table", "--n", "2", "--q", "3"][..],
        &["oracle", "--n", "2", "--q", "3", "--d", "2"],
        &["product", "--n-max", "3", "--q", "2"],
        &["coproduct", "--n-max", "2", "--q", "3"],
    ] {
        let a = galchar(args);
        let b = galchar(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn csv_table() {
    let o = galchar(&["table", "--n", "2", "--q", "2", "--format", "csv"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap().len(), 4);
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|row| row.len() == 4));
}

#[test]
fn csv_only_for_tables() {
    let o = galchar(&["classes", "--n", "2", "--q", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_kind(&o), "unsupported_format");
}

#[test]
fn exit_codes() {
    let o = galchar(&["classes", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_kind(&o), "usage");
    let o = galchar(&["classes", "--n", "2", "--q", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_kind(&o), "invalid_input");
    let o = galchar(&["oracle", "--n", "3", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_kind(&o), "capacity");
    let o = galchar(&["galois-irr", "--n", "2", "--q", "3", "--d", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = galchar_stdin(&["decompose"], b"{\"n\":2}");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_kind(&o), "parse");
    assert!(galchar(&["--help"]).status.success());
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_galchar"))
        .args(["oracle", "--n", "2", "--q", "2", "--seed", "11"])
        .env("GALCHAR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files.len(), 1);
    let cached: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join(&files[0])).unwrap()).unwrap();
    assert_eq!(cached["format_version"], 1);
    let again = Command::new(env!("CARGO_BIN_EXE_galchar"))
        .args(["oracle", "--n", "2", "--q", "2", "--seed", "11"])
        .env("GALCHAR_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn oracle_orbits() {
    let v = stdout_json(&galchar(&["oracle", "--n", "2", "--q", "3", "--d", "1"]));
    assert_eq!(v["orbits"]["class_blocks"].as_array().unwrap().len(), 7);
    assert_eq!(v["orbits"]["char_blocks"].as_array().unwrap().len(), 7);
    let v = stdout_json(&galchar(&["oracle", "--n", "2", "--q", "2"]));
    assert_eq!(v["orbits"]["class_blocks"].as_array().unwrap().len(), 3);
    assert_eq!(v["table"]["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn cuspidals_and_params() {
    let v = stdout_json(&galchar(&["cuspidals", "--n", "2", "--q", "3"]));
    assert_eq!(v["cuspidals"].as_array().unwrap().len(), 2);
    let v = stdout_json(&galchar(&["classes", "--n", "2", "--q", "3"]));
    assert_eq!(v["count"], 8);
    let v = stdout_json(&galchar(&["chars", "--n", "2", "--q", "2"]));
    assert_eq!(v["count"], 3);
}
