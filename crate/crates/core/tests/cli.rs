use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cert_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lt-kummer"))
        .args(args)
        .env("LT_KUMMER_CERT_DIR", cert_dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_writes_a_certificate_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["classify", "--p", "7", "--c", "x^2-x+7"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["outcome"], "not_kummer_faithful");
    assert_eq!(v["clause"], "norm_weil");

    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].file_name().unwrap().to_str().unwrap().to_owned();
    assert!(name.starts_with("certificate-") && name.ends_with(".json"), "{name}");
    let on_disk: Value = serde_json::from_str(&std::fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(on_disk, v);

    let out = run(&["verify", files[0].to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn tampered_certificate_fails_with_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let out = run(&["classify", "--p", "5", "--c", "x-30", "--out", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap().replace("kummer_faithful", "not_kummer_faithful");
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify", path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn factory_and_tower_and_transfer() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["factory", "--p", "5", "--r", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["certificate"]["clause"], "theorem3");
    assert_eq!(v["example"]["pi_minpoly"], "x^8 - 12*x^6 + 75*x^4 - 300*x^2 + 625");

    let out = run(&["tower", "--kind", "unramified", "--degree", "2^inf"], dir.path());
    assert_eq!(json(&out)["outcome"], "not_kummer_faithful");
    let out = run(&["tower", "--kind", "tame-galois", "--degree", "12"], dir.path());
    assert_eq!(json(&out)["outcome"], "kummer_faithful");

    let out = run(&["transfer", "--p", "5", "--c", "x-5", "--recipe", "nth-root", "--n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["clause"], "transfer");

    // every certificate written so far replays
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let path = e.unwrap().path();
        let out = run(&["verify", path.to_str().unwrap()], dir.path());
        assert_eq!(out.status.code(), Some(0), "{}", path.display());
    }
}

#[test]
fn weil_and_hondatate_queries() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["weil", "--poly", "x^2 - x + 7", "--q", "7"], dir.path());
    assert_eq!(json(&out), serde_json::json!({ "weil": true }));
    let out = run(&["weil", "--poly", "x^2 - 2*x - 6", "--q", "7"], dir.path());
    assert_eq!(json(&out), serde_json::json!({ "weil": false }));
    let out = run(&["hondatate", "--poly", "x^2 + 25", "--p", "5", "--f", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((&v["d"], &v["g"]), (&serde_json::json!(2), &serde_json::json!(2)));
    assert_eq!(v["places"][0]["invariant"], "1/2");
}

#[test]
fn usage_scope_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(code(&["classify", "--p", "6", "--c", "x-6"]), Some(2));
    assert_eq!(code(&["classify", "--p", "5", "--c", "x^2 +"]), Some(2));
    assert_eq!(code(&["weil", "--poly", "x", "--q", "6"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    // c = 3 has valuation 0 at 5
    assert_eq!(code(&["classify", "--p", "5", "--c", "x-3"]), Some(3));
    assert_eq!(code(&["verify", dir.path().join("missing.json").to_str().unwrap()]), Some(4));
}
