use std::fs;
use std::path::Path;
use std::process::Command;

use fstructure_lab::cli::{main_with_args, EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK};

fn run(argv: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["fslab"];
    full.extend_from_slice(argv);
    let code = main_with_args(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const FLAT5: &str = r#"
version = 1
name = "file-flat-5"
n = 2
s = 1

[domain]
kind = "cube"
size = 1.0

[metric]
upper = [1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1]

[fields]
f = [[0, -1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, -1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 0]]
xi = [[0, 0, 0, 0, 1]]
eta = [[0, 0, 0, 0, 1]]
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn catalog_run_is_consistent() {
    let (code, out, _) = run(&["--catalog", "s5", "--points", "8", "--vectors", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("CONSISTENT"));
    assert!(out.contains("NO_SPLIT_DETECTED"));
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(run(&[]).0, EXIT_CONFIG);
    assert_eq!(run(&["--catalog", "nope"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--catalog", "s5", "--suites", "bogus"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--catalog", "s5", "--tol", "lemma"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--catalog", "s5", "--seed", "xyz"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--catalog", "s5", "--points", "0"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--frobnicate"]).0, EXIT_CONFIG);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn structure_file_with_wrong_manifest_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = format!("{FLAT5}\n[manifest]\nverdict = \"NO_SPLIT_DETECTED\"\nexpect_skip = [\"fkcontact/*\"]\n");
    write(dir.path(), "wrong.toml", &wrong);
    let cfg = write(dir.path(), "run.toml", "version = 1\n[structure]\nfile = \"wrong.toml\"\n[run]\nsuites = \"classify\"\npoints = 8\n");
    let (code, _, err) = run(&["--config", &cfg]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(err.contains("verdict"), "{err}");

    // the flag wins over the config's structure
    let (code, out, _) = run(&["--config", &cfg, "--catalog", "flat:n=2,s=1"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn structure_file_runs_axioms() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "flat.toml", &format!("{FLAT5}\n[manifest]\nverdict = \"PRODUCT_WITH_RS\"\n"));
    let cfg = write(
        dir.path(),
        "run.toml",
        "version = 1\n[structure]\nfile = \"flat.toml\"\n[run]\nsuites = [\"axioms\", \"classify\"]\npoints = 4\nvectors = 2\n",
    );
    let (code, out, err) = run(&["--config", &cfg]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    assert!(out.contains("file-flat-5"));
    assert!(out.contains("PRODUCT_WITH_RS"));
}

#[test]
fn out_writes_json_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let (code, stdout, _) = run(&["--catalog", "s6", "--points", "4", "--suites", "axioms,reeb", "--out", out.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["suites"], serde_json::json!(["axioms", "reeb"]));
    let table = fs::read_to_string(dir.path().join("r.txt")).unwrap();
    assert_eq!(table, stdout);
}

#[test]
fn json_only_prints_parseable_json() {
    let (code, out, _) = run(&["--catalog", "flat:n=2,s=0", "--points", "4", "--json-only", "--tol", "axioms=1e-12"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tolerances"]["axioms"], 1e-12);
}

#[test]
fn seeds_change_the_sample_but_not_the_verdict() {
    let a = run(&["--catalog", "s5", "--points", "4", "--json-only", "--seed", "0x1"]).1;
    let b = run(&["--catalog", "s5", "--points", "4", "--json-only", "--seed", "2"]).1;
    let strip = |s: &str| {
        let mut v: serde_json::Value = serde_json::from_str(s).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        v
    };
    let (va, vb) = (strip(&a), strip(&b));
    assert_ne!(va["seed"], vb["seed"]);
    assert_ne!(va["entries"], vb["entries"]);
    assert_eq!(va["verdict"]["verdict"], vb["verdict"]["verdict"]);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fslab");
    let ok = Command::new(bin).args(["--catalog", "flat:n=2,s=1", "--points", "2", "--suites", "axioms"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["--catalog", "flat:n=0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_CONFIG));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn shipped_sample_configs_are_consistent() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    for cfg in ["s5-scaled.toml", "warped-run.toml"] {
        let path = format!("{data}/{cfg}");
        let (code, out, err) = run(&["--config", &path]);
        assert_eq!(code, EXIT_OK, "{cfg}: {out}{err}");
    }
}
