use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn tpa(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpa"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("tpa runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn emit(dir: &Path, id: &str, name: &str) -> PathBuf {
    let o = tpa(dir, &["catalog", id, "--emit", name]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir.join(name)
}

fn workdir() -> TempDir {
    let d = tempfile::tempdir().unwrap();
    emit(d.path(), "heis3", "heis3.json");
    emit(d.path(), "sl2", "sl2.json");
    emit(d.path(), "oscillator:n=1,lambda=1", "oscillator_n1.json");
    emit(d.path(), "poly-trunc-3", "p3.json");
    d
}

#[test]
fn jacobi_on_heisenberg_holds() {
    let d = workdir();
    let o = tpa(d.path(), &["check", "jacobi", "--algebra", "heis3.json"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["verdict"], "holds");
    assert_eq!(r["exit_code"], 0);
    assert_eq!(r["command"], "check");
}

#[test]
fn oscillator_half_derivations_have_dimension_four() {
    let d = workdir();
    let o = tpa(d.path(), &["derive", "--algebra", "oscillator_n1.json", "--delta", "1/2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"dimension\": 4"));
}

#[test]
fn sl2_has_no_tp_products() {
    let d = workdir();
    let o = tpa(d.path(), &["tpspace", "--algebra", "sl2.json"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("\"dimension\": 0"));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let d = workdir();
    let o = tpa(d.path(), &["check", "tp-compat", "--algebra", "p3.json", "--algebra2", "sl2.json"]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    assert_eq!(r["verdict"], "fails");
    let text = r["result"].to_string();
    assert!(text.contains("witness"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let d = workdir();
    let o = tpa(d.path(), &["check", "jacobi", "--algebra", "missing.json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(report(&o)["verdict"], "error");

    std::fs::write(d.path().join("bad.json"), "{not json").unwrap();
    let o = tpa(d.path(), &["tpspace", "--algebra", "bad.json"]);
    assert_eq!(code(&o), 2);

    let o = tpa(d.path(), &["check", "no-such-identity", "--algebra", "heis3.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn capacity_limit_exits_three() {
    let d = workdir();
    let o = tpa(d.path(), &["--capacity", "5", "derive", "--algebra", "sl2.json", "--delta", "1/2"]);
    assert_eq!(code(&o), 3);
    let r = report(&o);
    assert_eq!(r["verdict"], "capacity-exceeded");
    assert_eq!(r["capacity"], 5);

    let o = Command::new(env!("CARGO_BIN_EXE_tpa"))
        .current_dir(d.path())
        .env("TPA_CAPACITY", "5")
        .args(["tpspace", "--algebra", "sl2.json"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn reports_are_byte_deterministic() {
    let d = workdir();
    let runs = [
        vec!["field-check", "--samples", "15"],
        vec!["derive", "--algebra", "oscillator_n1.json", "--delta", "1/2"],
        vec!["--format", "human", "tpspace", "--algebra", "heis3.json"],
    ];
    for args in &runs {
        let a = tpa(d.path(), args);
        let b = tpa(d.path(), args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = tpa(d.path(), &["--seed", "3", "field-check", "--samples", "15"]);
    let b = tpa(d.path(), &["--seed", "3", "field-check", "--samples", "15"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 3);
}

#[test]
fn machine_report_schema() {
    let d = workdir();
    let o = tpa(d.path(), &["check", "jacobi", "--algebra", "heis3.json"]);
    let r = report(&o);
    for key in [
        "schema_version", "tool", "tool_version", "command", "params", "seed", "capacity", "inputs",
        "verdict", "exit_code", "result",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["schema_version"], 1);
    let inputs = r["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 1);
    let sha = inputs[0]["sha256"].as_str().unwrap();
    assert_eq!(sha.len(), 64);
    assert!(sha.chars().all(|c| c.is_ascii_hexdigit()));
}

#[test]
fn input_hash_tracks_file_contents() {
    let d = workdir();
    let hash = |name: &str| {
        let o = tpa(d.path(), &["check", "jacobi", "--algebra", name]);
        report(&o)["inputs"][0]["sha256"].as_str().unwrap().to_string()
    };
    let before = hash("heis3.json");
    let mut text = std::fs::read_to_string(d.path().join("heis3.json")).unwrap();
    text.push('\n');
    std::fs::write(d.path().join("heis3b.json"), text).unwrap();
    assert_ne!(before, hash("heis3b.json"));
    assert_eq!(before, hash("heis3.json"));
}

#[test]
fn human_and_machine_verdicts_agree() {
    let d = workdir();
    let cases: [&[&str]; 4] = [
        &["check", "jacobi", "--algebra", "heis3.json"],
        &["check", "tp-compat", "--algebra", "p3.json", "--algebra2", "sl2.json"],
        &["field-check", "--samples", "5", "--corrupt"],
        &["--capacity", "5", "tpspace", "--algebra", "sl2.json"],
    ];
    for args in cases {
        let m = tpa(d.path(), args);
        let mut hargs = vec!["--format", "human"];
        hargs.extend_from_slice(args);
        let h = tpa(d.path(), &hargs);
        assert_eq!(code(&m), code(&h), "{args:?}");
        let verdict = report(&m)["verdict"].as_str().unwrap().to_string();
        let text = String::from_utf8_lossy(&h.stdout);
        assert!(text.ends_with(&format!("verdict: {verdict}\n")), "{text}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let d = workdir();
    let o = tpa(d.path(), &["--out", "r.json", "check", "jacobi", "--algebra", "heis3.json"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(r["verdict"], "holds");
}

#[test]
fn unital_product_checks_with_the_unit_derivation() {
    let d = workdir();
    let o = tpa(d.path(), &["construct", "bracket-from-derivation", "--algebra", "p3.json", "--emit", "pair.json"]);
    assert_eq!(code(&o), 0);
    for id in ["gen-poisson", "quasi-poisson", "farkas-relation", "jordan-bracket-unital"] {
        let o = tpa(d.path(), &["check", id, "--algebra", "pair.json"]);
        assert_eq!(code(&o), 0, "{id}: {}", String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn constructions_verify_and_emit() {
    let d = workdir();
    let o = tpa(d.path(), &["construct", "bracket-from-derivation", "--algebra", "p3.json", "--emit", "pair.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let pair: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("pair.json")).unwrap()).unwrap();
    assert!(pair.get("provenance").is_some());

    let o = tpa(d.path(), &["construct", "kantor-double", "--algebra", "pair.json", "--emit", "kd.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = tpa(d.path(), &["check", "jordan-super", "--algebra", "kd.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let o = tpa(d.path(), &["construct", "kantor-double", "--algebra", "sl2.json"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn oscillator_families_hold() {
    let d = workdir();
    for args in [
        vec!["oscillator", "--generic", "--lambda", "1", "--family", "A", "--gamma", "2"],
        vec!["oscillator", "--generic", "--lambda", "1,3/2", "--family", "B.a", "--beta", "1,2"],
        vec!["oscillator", "--generic", "--lambda", "1", "--family", "B.b", "--beta", "1"],
    ] {
        let o = tpa(d.path(), &args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(report(&o)["verdict"], "holds");
    }
    let o = tpa(d.path(), &["oscillator", "--generic", "--lambda", "1", "--family", "B.b", "--beta", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn witt_pairs_hold_on_windows() {
    let d = workdir();
    let o = tpa(d.path(), &["witt1", "--alpha", "1@1,5@3", "--window", "-1,6"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = tpa(d.path(), &["witt1", "--alpha", "1@1", "--witt", "--window", "-4,4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = tpa(d.path(), &["witt1", "--alpha", "1@1", "--window", "3"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn field_check_passes_and_corruption_fails() {
    let d = workdir();
    let o = tpa(d.path(), &["field-check", "--samples", "20"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = tpa(d.path(), &["field-check", "--samples", "20", "--corrupt"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn identity_list_is_complete() {
    let d = workdir();
    let o = tpa(d.path(), &["--format", "human", "identities"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    for id in ["tp-compat", "jacobi", "farkas-relation", "gen-poisson", "quasi-poisson"] {
        assert!(text.contains(id), "{id}");
    }
}
