use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn heavenly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heavenly")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_all_and_unknown_lemma() {
    let o = heavenly(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("7/7 lemmas passed"));

    let o = heavenly(&["verify", "--only", "octic", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["id"], "octic");
    assert_eq!(v[0]["passed"], true);

    assert_eq!(heavenly(&["verify", "--only", "nope"]).status.code(), Some(2));
}

#[test]
fn classify_writes_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    let o = heavenly(&[
        "classify",
        corpus("jacobian_x5_minus_x.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema"], "heavenly-output/1");
    assert_eq!(v["verdict"]["status"], "heavenly");
    assert_eq!(v["verdict"]["closure_degree"], 2);

    let r = heavenly(&["replay", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", stdout(&r));
    assert!(stdout(&r).contains("consistent: true"));

    let o = heavenly(&["classify", corpus("elliptic_x3_minus_2.json").to_str().unwrap()]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["status"], "not_heavenly");

    let o = heavenly(&["classify", corpus("jacobian_x6_minus_1.json").to_str().unwrap(), "--text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not_heavenly"));
}

#[test]
fn tampered_verdict_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.json");
    heavenly(&[
        "classify",
        corpus("jacobian_x5_plus_x.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    v["verdict"]["closure_degree"] = 8.into();
    fs::write(&out, serde_json::to_string(&v).unwrap()).unwrap();
    let r = heavenly(&["replay", out.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
    assert!(stdout(&r).contains("consistent: false"));
}

#[test]
fn invalid_inputs_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"kind":"jacobian","base_field":"Q","f":[0,1.5,0,0,0,1]}"#);
    let o = heavenly(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let missing = dir.path().join("missing.json");
    assert_eq!(heavenly(&["classify", missing.to_str().unwrap()]).status.code(), Some(2));

    // x⁵ - x - 1 has Galois group S₅; a cap of 10 stops the splitting field.
    let big = write(dir.path(), "big.json", r#"{"kind":"jacobian","base_field":"Q","f":[-1,-1,0,0,0,1]}"#);
    let o = heavenly(&["classify", big.to_str().unwrap(), "--degree-cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["status"], "unknown");
}

#[test]
fn batch_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    for name in ["32a2.json", "jacobian_x6_minus_1.json", "weil_qsqrt2_twist.json"] {
        fs::copy(corpus(name), dir.path().join(name)).unwrap();
    }
    let o = heavenly(&[
        "classify",
        "--dir",
        dir.path().to_str().unwrap(),
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "32a2.verdict.json",
            "jacobian_x6_minus_1.verdict.json",
            "weil_qsqrt2_twist.verdict.json"
        ]
    );

    write(dir.path(), "broken.json", "{");
    let o = heavenly(&["classify", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(dir.path().join("32a2.verdict.json").exists());
}

#[test]
fn tools_and_axioms() {
    let o = heavenly(&["tool", "factor", "x^4 - 1"]);
    assert_eq!(stdout(&o), "constant: 1\nx - 1\nx + 1\nx^2 + 1\n");
    let o = heavenly(&["tool", "factor", "x^3 - 2*x^2 + x"]);
    assert!(stdout(&o).contains("(x - 1)^2"));

    assert_eq!(stdout(&heavenly(&["tool", "splitting-degree", "x^4 - 2"])).trim(), "8");
    assert_eq!(stdout(&heavenly(&["tool", "splitting-degree", "x^4 - 2", "--base", "Q(i)"])).trim(), "4");
    assert_eq!(heavenly(&["tool", "splitting-degree", "x^4 - 2", "--degree-cap", "4"]).status.code(), Some(3));

    let o = heavenly(&["tool", "ramification", "x^2 - 45"]);
    assert!(stdout(&o).starts_with("{5}"));
    assert_eq!(heavenly(&["tool", "ramification", "x^2 - 1"]).status.code(), Some(2));
    assert_eq!(heavenly(&["tool", "factor", "7"]).status.code(), Some(2));

    let o = heavenly(&["axioms", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert!(stdout(&heavenly(&["tool", "axioms"])).contains("PRO2_TOWER"));
}
