//! End-to-end runs of the command-line front end.

use std::path::{Path, PathBuf};

use kissing::cli::run_with_io;
use kissing::codes::{codes_isometric, make_code_named};
use kissing::io::{self, Payload};
use serde_json::Value;
use tempfile::TempDir;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn kissing(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kissing").chain(args.iter().copied());
    let code = run_with_io(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const ANNULUS: &str = r#"{"ambient_dim":2,"members":[
  {"type":"sphere","center":[0,0],"radius":1},
  {"type":"sphere","center":[0,0],"radius":3}]}"#;

#[test]
fn soddy_then_verify() {
    let dir = TempDir::new().unwrap();
    let r = kissing(&["soddy", "-n", "3", "-m", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = io::parse(&r.stdout).unwrap();
    let Payload::Soddy(out) = &doc.payload else { panic!("{}", doc.kind()) };
    assert_eq!(out.arrangement.len(), 6);
    assert_eq!(out.cardinality_hint, Some(6));
    assert_eq!(doc.metadata.command.as_deref(), Some("soddy -n 3 -m 3"));
    let path = write(dir.path(), "soddy.json", &r.stdout);
    let v = kissing(&["verify", "-f", s(&path), "-a", s(&path)]);
    assert_eq!(v.code, 0, "{}", v.stderr);
    let report: Value = serde_json::from_str(&v.stdout).unwrap();
    assert_eq!(report["kind"], "verification");
    assert_eq!(report["payload"]["pass"], true);
    assert_eq!(kissing(&["verify", "-a", s(&path)]).code, 0);
}

#[test]
fn verify_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let fam = write(dir.path(), "f.json", ANNULUS);
    let arr = write(dir.path(), "a.json", r#"[{"type":"sphere","center":[2,0],"radius":1.01}]"#);
    let r = kissing(&["verify", "-f", s(&fam), "-a", s(&arr)]);
    assert_eq!(r.code, 1);
    let report = io::parse(&r.stdout).unwrap();
    let Payload::Verification(rep) = report.payload else { panic!() };
    assert!(!rep.pass);
    let err: Value = serde_json::from_str(r.stderr.trim()).unwrap();
    assert_eq!(err["error"], "VerificationFailed");
}

#[test]
fn tight_hexagon_matches_catalog() {
    let r = kissing(&["tight", "-d", "2", "--psi", "1.0471975511965976"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let Payload::Code(code) = io::parse(&r.stdout).unwrap().payload else { panic!() };
    let emitted = kissing(&["codes", "emit", "polygon", "--k", "6"]);
    let Payload::Code(hex) = io::parse(&emitted.stdout).unwrap().payload else { panic!() };
    assert_eq!(hex, make_code_named("hexagon").unwrap());
    assert!(codes_isometric(&code, &hex, 1e-9).unwrap().is_some());
}

#[test]
fn build_extract_classify_render() {
    let dir = TempDir::new().unwrap();
    let fam = write(dir.path(), "f.json", ANNULUS);
    let rot = write(dir.path(), "rot.json", "[[0.6,-0.8],[0.8,0.6]]");
    let b = kissing(&["build", "-f", s(&fam), "-c", "hexagon", "--rotation", s(&rot)]);
    assert_eq!(b.code, 0, "{}", b.stderr);
    let arr = write(dir.path(), "arr.json", &b.stdout);

    let e = kissing(&["extract", "-f", s(&fam), "-a", s(&arr)]);
    assert_eq!(e.code, 0, "{}", e.stderr);
    let code_path = write(dir.path(), "code.json", &e.stdout);
    let c = kissing(&["classify", "-c", s(&code_path), "--psi", &(std::f64::consts::PI / 3.0).to_string()]);
    assert_eq!(c.code, 0, "{}", c.stderr);
    let class: Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(class["payload"], serde_json::json!({"type": "polygon", "k": 6}));

    let svg = dir.path().join("chain.svg");
    let r = kissing(&["render", "-a", s(&arr), "-o", s(&svg)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 8);
    let json = dir.path().join("chain.json");
    assert_eq!(kissing(&["render", "-a", s(&arr), "-o", s(&json)]).code, 0);
    let ply = dir.path().join("chain.ply");
    assert_eq!(kissing(&["render", "-a", s(&arr), "-o", s(&ply)]).code, 1);
}

#[test]
fn validate_canonicalize_locus() {
    let dir = TempDir::new().unwrap();
    let fam = write(dir.path(), "f.json", ANNULUS);
    for (cmd, kind) in [("validate", "report"), ("canonicalize", "canonical_form"), ("locus", "locus")] {
        let r = kissing(&[cmd, "-f", s(&fam)]);
        assert_eq!(r.code, 0, "{cmd}: {}", r.stderr);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["kind"], kind);
    }
    let r = kissing(&["locus", "-f", s(&fam)]);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["payload"]["locus"]["radius"], 2.0);
    assert_eq!(v["payload"]["contact_angle"]["type"], "finite");
}

#[test]
fn hexlet_sugar() {
    let dir = TempDir::new().unwrap();
    let fam = write(
        dir.path(),
        "f.json",
        r#"[{"type":"sphere","center":[0,0,1],"radius":1},{"type":"sphere","center":[0,0,3],"radius":1},
            {"type":"sphere","center":[2.8284271247461903,0,2],"radius":2}]"#,
    );
    let r = kissing(&["hexlet", "-f", s(&fam)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let Payload::Arrangement(a) = io::parse(&r.stdout).unwrap().payload else { panic!() };
    assert_eq!(a.len(), 6);
    let planar = write(dir.path(), "p.json", ANNULUS);
    assert_eq!(kissing(&["hexlet", "-f", s(&planar)]).code, 1);
}

#[test]
fn error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n  \"ambient_dim\": 2,\n  \"members\": [,]\n}");
    let r = kissing(&["validate", "-f", s(&bad)]);
    assert_eq!(r.code, 2);
    let err: Value = serde_json::from_str(r.stderr.trim()).unwrap();
    assert_eq!(err["error"], "MalformedInput");
    assert!(err["message"].as_str().unwrap().contains("line 3"));

    let old = write(dir.path(), "old.json", r#"{"schema_version":"0.1","kind":"family","payload":{}}"#);
    let r = kissing(&["validate", "-f", s(&old)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("SchemaMismatch"));

    assert_eq!(kissing(&["validate", "-f", "/nonexistent/family.json"]).code, 2);
    assert_eq!(kissing(&["frobnicate"]).code, 2);
    assert_eq!(kissing(&["tight", "-d", "2"]).code, 2);

    let r = kissing(&["tight", "-d", "3", "--psi", "2.5"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("InfeasiblePsi"));
    let r = kissing(&["codes", "emit", "dodecahedron"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("UnknownCode"));
    let r = kissing(&["soddy", "-n", "3", "-m", "6"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("BadDims"));
}

#[test]
fn codes_list_and_help() {
    let r = kissing(&["codes", "list"]);
    assert_eq!(r.code, 0);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let names: Vec<&str> = v["payload"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"cell600") && names.contains(&"polygon:6"));
    let h = kissing(&["--help"]);
    assert_eq!(h.code, 0);
    assert!(h.stdout.contains("soddy"));
}

#[test]
fn commands_are_deterministic() {
    let a = kissing(&["soddy", "-n", "4", "-m", "3"]);
    let b = kissing(&["soddy", "-n", "4", "-m", "3"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let t1 = kissing(&["tight", "-d", "4", "--psi", &(std::f64::consts::PI / 5.0).to_string()]);
    let t2 = kissing(&["tight", "-d", "4", "--psi", &(std::f64::consts::PI / 5.0).to_string()]);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn soddy_default_codes() {
    for (n, m, size) in [(3, 3, 6), (4, 3, 12), (5, 3, 24), (4, 5, 2), (2, 3, 2)] {
        let r = kissing(&["soddy", "-n", &n.to_string(), "-m", &m.to_string()]);
        assert_eq!(r.code, 0, "n={n} m={m}: {}", r.stderr);
        let Payload::Soddy(out) = io::parse(&r.stdout).unwrap().payload else { panic!() };
        assert_eq!(out.arrangement.len(), size, "n={n} m={m}");
    }
}
