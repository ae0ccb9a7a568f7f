use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ffchar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffchar"))
        .args(args)
        .env_remove("FFCHAR_CACHE_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn field_info_prime_and_extension() {
    let o = ffchar(&["field-info", "--p", "5", "--r", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generator: 2 (index 2)"));
    let o = ffchar(&["field-info", "--p", "3", "--r", "2"]);
    assert!(stdout(&o).contains("modulus: t^2 + 1"), "{}", stdout(&o));
    assert!(stdout(&o).contains("q = 9"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        ffchar(&["field-info", "--p", "4", "--r", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ffchar(&["field-info"]).status.code(), Some(2));
    assert_eq!(
        ffchar(&["verify", "--q", "5", "--checks", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ffchar(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn hyper_values() {
    let o = ffchar(&[
        "hyper", "--q", "5", "--top", "2,2", "--bottom", "0", "--x", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value: 2/5"), "{}", stdout(&o));
    assert!(stdout(&o).contains("approx: 0.400000000000 +0.000000000000i"));
    let o = ffchar(&[
        "hyper", "--q", "5", "--top", "2,2", "--bottom", "0", "--x", "0",
    ]);
    assert!(stdout(&o).contains("value: 0"));
    // q = 7, lambda = 3: 1 + 7 - 7 * 2F1 counts the curve
    let o = ffchar(&[
        "hyper", "--q", "7", "--top", "3,3", "--bottom", "0", "--x", "3",
    ]);
    let count = ffchar::hypergeometric::ec_count(
        &ffchar::FieldTable::new(7, 1).unwrap(),
        ffchar::FieldElement::from_index(3),
    )
    .unwrap() as f64;
    let approx: f64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("approx: "))
        .and_then(|l| l.split_whitespace().next())
        .unwrap()
        .parse()
        .unwrap();
    assert!((1.0 + 7.0 - 7.0 * approx - count).abs() < 1e-9);
    assert_eq!(
        ffchar(&["hyper", "--q", "5", "--top", "1", "--x", "9"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_gf_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = ffchar(&[
        "verify",
        "--q",
        "5,7,11,13",
        "--checks",
        "gf",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["verdict"], "pass");
    assert_eq!(report["summary"]["records"], 4);
    assert_eq!(
        report["records"][0]["exact"]["charpoly"],
        "x^3 + 2*x^2 - x - 2"
    );
}

#[test]
fn verify_even_powers_pass() {
    let o = ffchar(&["verify", "--q", "5..13", "--checks", "thm2", "--k", "2,4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn exact_charpoly_over_cap_is_a_record_error() {
    let o = ffchar(&[
        "verify", "--q", "17", "--checks", "thm1", "--a", "1", "--b", "2", "--out", "-",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["records"][0]["verdict"], "error");
    assert!(report["records"][0]["error"]
        .as_str()
        .unwrap()
        .contains("cap"));
}

#[test]
fn matrix_file_schema() {
    let o = ffchar(&["matrix-build", "--q", "5", "--a", "2", "--b", "0"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["p"], 5);
    assert_eq!(doc["a_idx"], 2);
    let rows = doc["entries"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    // row of 1: phi(j) phi(1 - j) = (0, -1, 1, -1), exponents mod 4
    assert_eq!(rows[0], serde_json::json!([null, 2, 0, 2]));
}

#[test]
fn reports_are_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let run = |workers: &str, name: &str| {
        let path = dir.path().join(name);
        let o = ffchar(&[
            "sweep",
            "--q",
            "5,7,9",
            "--checks",
            "lemma21,euler,thm1",
            "--a",
            "sample:6",
            "--b",
            "all",
            "--seed",
            "11",
            "--backend",
            "both",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let mut v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("runtime");
        v
    };
    let one = run("1", "a.json");
    assert_eq!(one, run("3", "b.json"));
    assert_eq!(one, run("1", "c.json"));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = ffchar(&["cache", "build", "--q", "27", "--cache-dir", d]);
    assert!(
        stdout(&o).contains("field built, jacobi built"),
        "{}",
        stdout(&o)
    );
    let jacobi = dir.path().join("jacobi-3-3.json");
    let first = fs::read(&jacobi).unwrap();
    let o = ffchar(&["cache", "load", "--q", "27", "--cache-dir", d]);
    assert!(stdout(&o).contains("field hit, jacobi hit"));

    fs::write(&jacobi, &first[..first.len() / 2]).unwrap();
    let o = ffchar(&["cache", "load", "--q", "27", "--cache-dir", d]);
    assert!(stdout(&o).contains("jacobi rebuilt"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(fs::read(&jacobi).unwrap(), first);

    let o = ffchar(&["cache", "clear", "--cache-dir", d]);
    assert!(stdout(&o).contains("removed 2 files"));
}

#[test]
fn no_cache_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = ffchar(&[
        "verify",
        "--q",
        "7",
        "--checks",
        "ec",
        "--cache-dir",
        d,
        "--no-cache",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_ffchar"))
        .args(["verify", "--q", "7", "--checks", "ec"])
        .env("FFCHAR_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn first_power_is_reported_not_asserted() {
    let o = ffchar(&[
        "verify", "--q", "7", "--checks", "thm2", "--k", "1", "--out", "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["summary"]["unasserted"], 5);
    assert_eq!(report["summary"]["failed"], 5);
    assert_eq!(report["records"][0]["asserted"], false);
}

#[test]
fn charpoly_variant_tally() {
    let o = ffchar(&["verify", "--q", "5", "--checks", "thm1", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let tally = &report["summary"]["thm1_variants"];
    assert_eq!(tally["stated"], 0);
    assert_eq!(tally["consistent"], true);
    assert_eq!(
        tally["lemma"].as_u64().unwrap() + tally["indistinguishable"].as_u64().unwrap(),
        16
    );
}
