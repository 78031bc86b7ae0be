use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfpairs"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn build(dir: &Path, name: &str, n: &str, file: &str) -> PathBuf {
    let o = run(dir, &["catalog", "build", name, "--N", n, "--out", file]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    dir.join(file)
}

fn report(dir: &Path, args: &[&str]) -> (i32, Value) {
    let mut all: Vec<&str> = args.to_vec();
    all.extend(["--out", "report.json"]);
    let o = run(dir, &all);
    let v = serde_json::from_str(&fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    (code(&o), v)
}

fn check<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_taft_passes() {
    let d = TempDir::new().unwrap();
    build(d.path(), "taft", "2", "taft2.json");
    let (c, v) = report(d.path(), &["verify", "--input", "taft2.json"]);
    assert_eq!(c, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["schema"], 1);
    assert_eq!(check(&v, "hopf")["pass"], true);
}

#[test]
fn verify_broken_file_fails() {
    let d = TempDir::new().unwrap();
    let p = build(d.path(), "taft", "2", "taft2.json");
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    // Scale one structure constant of the product.
    v["mult"][3][3]["num"] = serde_json::json!([["5/1"]]);
    fs::write(d.path().join("broken.json"), v.to_string()).unwrap();
    let (c, r) = report(d.path(), &["verify", "--input", "broken.json"]);
    assert_eq!(c, 1);
    assert_eq!(r["pass"], false);
}

#[test]
fn verify_datum_passes() {
    let d = TempDir::new().unwrap();
    build(d.path(), "A2", "2", "datum_a2.json");
    let (c, v) = report(d.path(), &["verify", "--input", "datum_a2.json"]);
    assert_eq!(c, 0);
    assert_eq!(v["data"]["finite_type"]["finite"], true);
}

#[test]
fn lmodule_single_pair_and_errors() {
    let d = TempDir::new().unwrap();
    build(d.path(), "double", "2", "d2.json");
    let (c, v) = report(d.path(), &["lmodule", "--input", "d2.json", "--rho", "0", "--chi", "0"]);
    assert_eq!(c, 0);
    assert_eq!(v["data"]["dim"], 2);
    assert_eq!(v["data"]["simple"], true);
    assert_eq!(v["data"]["n_basis"].as_array().unwrap().len(), 1);
    assert!(!v["data"]["generators"].as_array().unwrap().is_empty());

    let o = run(d.path(), &["lmodule", "--input", "d2.json", "--rho", "7", "--chi", "0"]);
    assert_eq!(code(&o), 2);
    let o = run(d.path(), &["lmodule", "--input", "d2.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn all_pairs_gives_dims_and_iso_matrix() {
    let d = TempDir::new().unwrap();
    build(d.path(), "double", "2", "d2.json");
    for cmd in ["lmodule", "rmodule"] {
        let (c, v) = report(d.path(), &[cmd, "--input", "d2.json", "--all-pairs"]);
        assert_eq!(c, 0);
        let dims: Vec<u64> = v["data"]["rows"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
        assert_eq!(dims, vec![2, 1, 1, 2]);
        let iso = v["data"]["iso"].as_array().unwrap();
        for (i, row) in iso.iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                assert_eq!(x.as_bool().unwrap(), i == j);
            }
        }
    }
}

#[test]
fn tables() {
    let d = TempDir::new().unwrap();
    for (name, n, rows) in [("double", "2", 4), ("double", "3", 9), ("tensor", "2", 4)] {
        let f = format!("{name}{n}.json");
        build(d.path(), name, n, &f);
        let (c, v) = report(d.path(), &["table", "--input", &f]);
        assert_eq!(c, 0, "{name} {n}");
        assert_eq!(v["data"]["rows"].as_array().unwrap().len(), rows);
        assert_eq!(check(&v, "bijective")["pass"], true);
        assert_eq!(check(&v, "duality")["pass"], true);
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let d = TempDir::new().unwrap();
    build(d.path(), "double", "2", "d2.json");
    let args = ["table", "--input", "d2.json", "--out"];
    assert_eq!(code(&run(d.path(), &[&args[..], &["a.json"]].concat())), 0);
    assert_eq!(code(&run(d.path(), &[&args[..], &["b.json"]].concat())), 0);
    let (a, b) = (fs::read(d.path().join("a.json")).unwrap(), fs::read(d.path().join("b.json")).unwrap());
    let strip = |x: &[u8]| {
        let mut v: Value = serde_json::from_slice(x).unwrap();
        v["command"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
    build(d.path(), "double", "2", "d2_again.json");
    assert_eq!(fs::read(d.path().join("d2.json")).unwrap(), fs::read(d.path().join("d2_again.json")).unwrap());
}

#[test]
fn double_emits_the_catalog_double() {
    let d = TempDir::new().unwrap();
    build(d.path(), "taft", "2", "taft2.json");
    build(d.path(), "double", "2", "d2.json");
    let o = run(d.path(), &["double", "--input", "taft2.json", "--emit", "dd.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read(d.path().join("dd.json")).unwrap(), fs::read(d.path().join("d2.json")).unwrap());
}

#[test]
fn cartan_audits() {
    let d = TempDir::new().unwrap();
    build(d.path(), "counterexample", "2", "ce.json");
    let (c, v) = report(d.path(), &["cartan", "audit", "--datum", "ce.json"]);
    assert_eq!(c, 1);
    assert_eq!(check(&v, "hypothesis.finite_type")["pass"], false);
    assert_eq!(check(&v, "hypothesis.cartan_type")["pass"], true);

    build(d.path(), "A2", "2", "a2.json");
    let (c, v) = report(d.path(), &["cartan", "audit", "--datum", "a2.json"]);
    assert_eq!(c, 0);
    assert_eq!(check(&v, "consequence.q_positive_definite")["pass"], true);

    build(d.path(), "simple-rep", "2", "rep.json");
    build(d.path(), "simple-datum", "2", "datum.json");
    let (c, v) = report(d.path(), &["cartan", "audit", "--datum", "datum.json", "--rep", "rep.json"]);
    assert_eq!(c, 1);
    assert_eq!(check(&v, "hypothesis.not_roots_of_unity")["pass"], false);
    assert_eq!(check(&v, "conclusion.skew_weights")["pass"], true);
    assert_eq!(v["data"]["counterexample_confirmed"], true);
}

#[test]
fn skew_pairs_are_parsed() {
    let d = TempDir::new().unwrap();
    build(d.path(), "A1", "2", "a1.json");
    let o = run(d.path(), &["cartan", "audit", "--datum", "a1.json", "--skew", "0,0"]);
    assert_eq!(code(&o), 0);
    let o = run(d.path(), &["cartan", "audit", "--datum", "a1.json", "--skew", "0,5"]);
    assert_eq!(code(&o), 2);
    let o = run(d.path(), &["cartan", "audit", "--datum", "a1.json", "--skew", "zero"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_with_two() {
    let d = TempDir::new().unwrap();
    assert_eq!(code(&run(d.path(), &["frobnicate"])), 2);
    assert_eq!(code(&run(d.path(), &["verify", "--input", "missing.json"])), 2);
    assert_eq!(code(&run(d.path(), &["catalog", "build", "E8"])), 2);
    build(d.path(), "simple-rep", "3", "rep3.json");
    build(d.path(), "A1", "2", "a1.json");
    assert_eq!(code(&run(d.path(), &["cartan", "audit", "--datum", "a1.json", "--rep", "rep3.json"])), 2);
    assert_eq!(code(&run(d.path(), &["verify", "--input", "rep3.json"])), 2);
    fs::write(d.path().join("junk.json"), "{\"schema\": 1}").unwrap();
    assert_eq!(code(&run(d.path(), &["verify", "--input", "junk.json"])), 2);
}

#[test]
fn catalog_prints_json_without_out() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["catalog", "build", "group", "--N", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "hopf");
    assert_eq!(v["dim"], 3);
    assert_eq!(v["session"]["conductor"], 1);
}

#[test]
fn selftest_passes() {
    let d = TempDir::new().unwrap();
    let (c, v) = report(d.path(), &["selftest"]);
    assert_eq!(c, 0, "{v}");
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
}
