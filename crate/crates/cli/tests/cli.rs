use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superjordan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn build_to(dir: &Path, spec: &str, name: &str) -> PathBuf {
    let path = dir.join(name);
    let o = run(&["catalog", "build", spec, "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{spec}: {}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn catalog_build_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = build_to(dir.path(), "Dt:-2", "d.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&d).unwrap()).unwrap();
    assert_eq!(v["dim"], 4);
    let o = build_to(dir.path(), "osp:1,1", "o.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(v["dim"], 4);
    let bad = run(&["catalog", "build", "Dt:0"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("ZeroParameter"));
    assert_eq!(run(&["catalog", "build", "nonsense:3"]).status.code(), Some(2));
    assert!(stdout(&run(&["catalog", "list"])).contains("superform:<p>,<q>"));
}

#[test]
fn build_write_read_write_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = build_to(dir.path(), "Mosp:1,1", "a.json");
    let printed = run(&["catalog", "build", "Mosp:1,1"]);
    assert_eq!(stdout(&printed).trim_end(), std::fs::read_to_string(&a).unwrap());
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = build_to(dir.path(), "K3", "k3.json");
    assert_eq!(run(&["check", "jordan", k3.to_str().unwrap()]).status.code(), Some(0));
    let bad = run(&["check", "jordan", fixture("k3_corrupted.json").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL at (e, e, x)"));
    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(run(&["check", "jordan", junk.to_str().unwrap()]).status.code(), Some(2));
    let m = build_to(dir.path(), "Mt:2", "m.json");
    assert_eq!(run(&["check", "superinvolution", m.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["check", "associative", m.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run(&["check", "superinvolution", k3.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn closures() {
    let dir = tempfile::tempdir().unwrap();
    let m = build_to(dir.path(), "plus:M:1,1", "m.json");
    let m = m.to_str().unwrap();
    let o = run(&["closure", "--algebra", m, "--span", "e11", "--span", "e22", "--span", "e12+e21", "--assoc"]);
    assert!(stdout(&o).contains("closure dim 4 of 4"), "{}", stdout(&o));
    let o = run(&["closure", "--algebra", m, "--span", "e11", "--span", "e22", "--span", "e12+e21"]);
    assert!(stdout(&o).contains("closure dim 3 of 4"));
    let d = build_to(dir.path(), "Dt:2", "d.json");
    let o = run(&["closure", "--algebra", d.to_str().unwrap(), "--span", "e+f"]);
    assert!(stdout(&o).contains("closure dim 1 of 4"));
    let o = run(&["closure", "--algebra", d.to_str().unwrap(), "--span", "[1,0,0]"]);
    assert_eq!(o.status.code(), Some(2));
    let p2 = build_to(dir.path(), "plus:M:2,2", "p2.json");
    let o = run(&["maximal", "--claim", "thm4.3.p:2", "--mode", "basis"]);
    assert!(o.status.success());
    let herm = ["e11+e33", "e22+e44", "e12+e43", "e21+e34", "e14-e23", "e31", "e42", "e32+e41"];
    let mut args = vec!["closure", "--algebra", p2.to_str().unwrap()];
    for h in &herm {
        args.push("--span");
        args.push(h);
    }
    let o = run(&args);
    assert!(stdout(&o).contains("closure dim 8 of 16"), "{}", stdout(&o));
}

#[test]
fn maximal_modes_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = build_to(dir.path(), "K3", "k3.json");
    let k3 = k3.to_str().unwrap();
    let o = run(&["maximal", "--algebra", k3, "--sub", "e", "--sub", "x", "--mode", "modp:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("AllGenerate"));
    let d1 = build_to(dir.path(), "Dt:1", "d1.json");
    let d1 = d1.to_str().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&["maximal", "--algebra", d1, "--sub", "e", "--mode", "random:20:7", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CounterexampleFound"));
    let o = run(&["replay", report.to_str().unwrap(), "--algebra", d1]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["maximal", "--algebra", d1, "--sub", "e", "--mode", "modp:2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad prime 2"));
}

#[test]
fn registry_runs() {
    let o = run(&["registry", "run", "--filter", "thm2.1.*", "--mode", "modp:5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL "));
    let o = run(&["registry", "run", "--filter", "q5.1.*"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("EVIDENCE"));
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("s.json");
    let o = bin()
        .args(["registry", "run", "--json", json.to_str().unwrap()])
        .env("SUPERJORDAN_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["results"].as_array().unwrap().len() >= 40);
    assert_eq!(run(&["registry", "run", "--filter", "nothing*"]).status.code(), Some(2));
}

#[test]
fn osp_modules() {
    let o = run(&["osp", "vm", "--m", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("rho_h =\n[ 1  0  0]\n[ 0  0  0]\n[ 0  0 -1]"));
    let o = run(&["osp", "vm", "--m", "2", "--form"]);
    assert!(stdout(&o).contains("invariant form"));
    let o = run(&["osp", "vm", "--m", "2", "--embed", "-2/3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("closure dim 25 of 25"));
    assert_eq!(run(&["osp", "vm", "--m", "2", "--embed", "5"]).status.code(), Some(2));
}
