use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qglab"))
        .args(args)
        .env_remove("QGLAB_DIM_CAP")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("runtime_ms");
            m.values_mut().for_each(strip_runtime);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn write_z2_with_haar(dir: &Path, haar: &str) -> String {
    let g = qglab::FiniteQuantumGroup::builtin("c_z2").unwrap();
    let mut v = qglab::json::to_value(&g);
    v["haar"] = serde_json::from_str(haar).unwrap();
    let path = dir.join("z2.json");
    std::fs::write(&path, v.to_string()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn validate_builtin_passes() {
    let out = qglab(&["validate", "--builtin", "c_z2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 17);
    assert!(records.iter().all(|r| r["name"].as_str().unwrap().starts_with("validate/c_z2/")));
}

#[test]
fn corrupted_haar_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_z2_with_haar(dir.path(), "[[1.0, 0.0], [0.0, 0.0]]");
    let out = qglab(&["validate", "--instance", &path]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pass"], false);
    let failed: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"validate/c_z2/haar_invariant"), "{failed:?}");

    let md = qglab(&["validate", "--instance", &path, "--format", "md"]);
    assert_eq!(md.status.code(), Some(1));
    let text = String::from_utf8(md.stdout).unwrap();
    let row = text.lines().find(|l| l.contains("haar_invariant")).unwrap();
    assert!(row.contains("FAIL"));
}

#[test]
fn truncated_instance_is_a_structural_error() {
    let dir = tempfile::tempdir().unwrap();
    let g = qglab::FiniteQuantumGroup::builtin("c_z2").unwrap();
    let mut v = qglab::json::to_value(&g);
    v.as_object_mut().unwrap().remove("antipode");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = qglab(&["validate", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("antipode"));
    let missing = qglab(&["validate", "--instance", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn dual_emits_a_loadable_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.json");
    let out = qglab(&["dual", "--builtin", "kac_paljutkin", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dual = qglab::json::load(&path).unwrap();
    assert_eq!(dual.dim(), 8);
    assert!(dual.validate(1e-9).passed);
    let again = qglab(&["validate", "--instance", path.to_str().unwrap(), "--tol", "1e-9"]);
    assert_eq!(again.status.code(), Some(0));
    let two = qglab(&["dual", "--builtin", "c_z2", "--builtin", "c_z3"]);
    assert_eq!(two.status.code(), Some(2));
    let report = qglab(&["dual", "--report", "--builtin", "c_z3", "--trials", "5"]);
    assert_eq!(report.status.code(), Some(0));
    assert!(json_of(&report)["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["name"] == "duality/c_z3/pentagon"));
}

#[test]
fn dimension_cap_precedence() {
    let args = ["noncb", "--copies", "2", "--length", "3"];
    let over = qglab(&[&args[..], &["--dim-cap", "5"]].concat());
    assert_eq!(over.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&over.stderr).contains("budget"));
    let env = Command::new(env!("CARGO_BIN_EXE_qglab"))
        .args(args)
        .env("QGLAB_DIM_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_qglab"))
        .args(args)
        .args(["--dim-cap", "1000"])
        .env("QGLAB_DIM_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn invalid_configuration() {
    for args in [
        &["validate", "--builtin", "c_z2", "--tol", "-1"][..],
        &["validate", "--builtin", "c_z2", "--tol", "bogus=1e-3"],
        &["corep-suite", "--builtin", "c_z2", "--trials", "0"],
        &["validate", "--builtin", "no_such_group"],
        &["khintchine", "--length", "1"],
    ] {
        assert_eq!(qglab(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(qglab(&["validate", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn named_tolerance_override_applies() {
    let base = ["unitarize", "--builtin", "kac_paljutkin", "--trials", "3"];
    assert_eq!(qglab(&base).status.code(), Some(0));
    let strict = qglab(&[&base[..], &["--tol", "unitary=1e-30"]].concat());
    assert_eq!(strict.status.code(), Some(1));
    let v = json_of(&strict);
    let rec = v["records"].as_array().unwrap().iter().find(|r| r["name"] == "unitarize/kac_paljutkin/unitary").unwrap();
    assert_eq!(rec["limit"], 1e-30);
    assert_eq!(rec["pass"], false);
}

#[test]
fn fock_reports_carry_the_summary_fields() {
    let out = qglab(&["khintchine", "--copies", "3", "--length", "3", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let fock = &v["fock"][0];
    for key in ["config", "certified_lower", "analytic_bounds", "ratios", "runtime_ms"] {
        assert!(!fock[key].is_null(), "{key}");
    }
    assert_eq!(fock["config"]["copies"], 3);
    let column = fock["certified_lower"]["column"].as_f64().unwrap();
    assert!((column - 3f64.sqrt()).abs() < 1e-10);
}

#[test]
fn reports_written_to_file_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = qglab(&[
            "all",
            "--builtin",
            "cg_s3",
            "--trials",
            "4",
            "--copies",
            "2",
            "--length",
            "3",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        strip_runtime(&mut v);
        v
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    let names: Vec<&str> = a["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}
