use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn quiver(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_denomlab"));
    c.args(args).env_remove("CACHE_DIR");
    if let Some(d) = cache {
        c.env("CACHE_DIR", d);
    }
    c.output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

struct Fixture {
    dir: TempDir,
    a2: String,
    a3: String,
    wild: String,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let a2 = quiver(dir.path(), "a2.q", "# A2\n1 -> 2\n").display().to_string();
    let a3 = quiver(dir.path(), "a3.q", "1 -> 2\n2 -> 3\n").display().to_string();
    let wild = quiver(dir.path(), "w.q", "1 -> 2 *2\n2 -> 3\n").display().to_string();
    Fixture { dir, a2, a3, wild }
}

#[test]
fn enumerate_a2() {
    let f = fixture();
    let o = run(&["enumerate", "--quiver", &f.a2], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["variables"].as_array().unwrap().len(), 5);
    assert_eq!(v["seeds"].as_array().unwrap().len(), 5);
    assert_eq!(v["complete"], true);
}

#[test]
fn verify_denominator_exit_codes() {
    let f = fixture();
    let o = run(&["verify", "denominator", "--quiver", &f.a3, "--tilt", "mu(1,2)"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["outcome"], "pass");
    let all = run(&["verify", "denominator", "--quiver", &f.a3], None);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(json(&all)["reports"].as_array().unwrap().len(), 14);
}

#[test]
fn character_of_simple() {
    let f = fixture();
    let o = run(&["character", "--quiver", &f.a2, "--tilt", "id", "--object", "dim:1,0", "--ledger"], None);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["value"], "(1 + x2) / x1");
    assert_eq!(v["ledger"][0]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn grassmannian_of_projective() {
    let f = fixture();
    let o = run(&["grassmannian", "--quiver", &f.a3, "--object", "dim:1,1,1", "--e", "0,1,1"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["fit"]["chi"], 1);
    assert_eq!(v["fit"]["primes"][0], 2);
}

#[test]
fn compat_and_converse() {
    let f = fixture();
    let o = run(&["compat", "--quiver", &f.a3, "--tilt", "mu(2)"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["incompatible"], 0);
    let o = run(&["verify", "converse", "--quiver", &f.wild, "--depth", "2"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["outcome"], "pass");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
    let o = run(&["verify", "converse", "--quiver", &f.wild, "--depth", "1"], None);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors() {
    let f = fixture();
    let o = run(&["enumerate", "--quiver", &f.wild], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--depth"));
    let bad = quiver(f.dir.path(), "bad.q", "1 -> 2\n\n2 => 3\n").display().to_string();
    let o = run(&["enumerate", "--quiver", &bad], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", "denominator", "--quiver", &f.a2, "--tilt", "mu(4)"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["character", "--quiver", &f.a2], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cache_hits_are_byte_identical() {
    let f = fixture();
    let cache = f.dir.path().join("cache");
    let args = ["character", "--quiver", f.a3.as_str(), "--tilt", "mu(1,3)", "--object", "dim:1,1,1"];
    let first = run(&args, Some(&cache));
    assert!(first.status.success());
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run(&args, Some(&cache));
    assert_eq!(first.stdout, second.stdout);
    let fresh = run(&args, None);
    assert_eq!(first.stdout, fresh.stdout);
}

#[test]
fn out_file() {
    let f = fixture();
    let out = f.dir.path().join("reg.json");
    let o = run(&["enumerate", "--quiver", &f.a3, "--out", out.to_str().unwrap(), "--workers", "1"], None);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["variables"].as_array().unwrap().len(), 9);
}
