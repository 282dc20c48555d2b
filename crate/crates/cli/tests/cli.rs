use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mobi_core::model::parse_structure;
use serde_json::Value as Json;

fn mobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mobi")).args(args).output().expect("runs the binary")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Json {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

/// Every status string anywhere in a report.
fn statuses(v: &Json, out: &mut Vec<String>) {
    match v {
        Json::Object(m) => {
            if let Some(Json::String(s)) = m.get("status") {
                out.push(s.clone());
            }
            m.values().for_each(|x| statuses(x, out));
        }
        Json::Array(a) => a.iter().for_each(|x| statuses(x, out)),
        _ => {}
    }
}

fn has_fail(v: &Json) -> bool {
    let mut s = Vec::new();
    statuses(v, &mut s);
    s.iter().any(|x| x == "fail")
}

#[test]
fn verify_example6() {
    let o = mobi(&["verify", "--profile", "mobi-full", &fixture("example6.json")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = json(&o);
    let results = doc["reports"][0]["results"].as_array().unwrap();
    let ids: Vec<&str> = results.iter().map(|r| r["axiom"].as_str().unwrap()).collect();
    assert_eq!(ids, ["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"]);
    assert!(results.iter().all(|r| r["status"] == "pass"));
    assert!(!has_fail(&doc));
}

#[test]
fn section4_has_no_ring() {
    let o = mobi(&["convert", "--to", "ring", &fixture("section4-imm.json")]);
    assert_eq!(code(&o), 2);
    let doc = json(&o);
    assert_eq!(doc["error"]["kind"], "precondition");
    assert!(doc["error"]["message"].as_str().unwrap().contains("no inverse for 1̄⊕1"));
}

#[test]
fn enumerate_counts() {
    let o = mobi(&["enumerate", "--order", "4", "--signature", "mobi"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let summary: Json = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(summary["summary"]["count"], 0);

    let o = mobi(&["enumerate", "--order", "3", "--up-to-iso"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    let s = parse_structure(lines[0].as_bytes()).unwrap();
    assert_eq!(s.carrier().size(), Some(3));
    let summary: Json = serde_json::from_str(lines[1]).unwrap();
    assert_eq!(summary["summary"]["count"], 1);

    let o = mobi(&["enumerate", "--order", "5", "--signature", "ring-with-half", "--up-to-iso"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
    assert_eq!(code(&mobi(&["enumerate", "--order", "5", "--signature", "ring-with-half"])), 3);
}

#[test]
fn node_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mobi"))
        .args(["enumerate", "--order", "5"])
        .env("MOBI_NODE_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 4);
    let text = String::from_utf8(o.stdout).unwrap();
    let summary: Json = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["capped"], true);
    let o = Command::new(env!("CARGO_BIN_EXE_mobi"))
        .args(["enumerate", "--order", "5"])
        .env("MOBI_NODE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn failures_carry_witnesses() {
    // IMM 2 is an IMM but not cancellative
    let o = mobi(&["verify", &fixture("imm2.json")]);
    assert_eq!(code(&o), 0);
    let o = mobi(&["verify", "--profile", "imm-star", &fixture("imm2.json")]);
    assert_eq!(code(&o), 1);
    let doc = json(&o);
    assert!(has_fail(&doc));
    let c3 = doc["reports"][0]["results"].as_array().unwrap().iter().find(|r| r["axiom"] == "C3").unwrap().clone();
    assert_eq!(c3["status"], "fail");
    assert_eq!(c3["witness"].as_array().unwrap().len(), 3);

    // one corrupted table entry
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Json = serde_json::from_slice(&std::fs::read(fixture("three-element.json")).unwrap()).unwrap();
    // p(0, ½, 0) = 0 becomes 1
    let cell = &mut doc["ops"]["p"]["table"][0][1][0];
    assert_eq!(*cell, "0");
    *cell = Json::from("1");
    let path = dir.path().join("bad.json");
    std::fs::write(&path, serde_json::to_vec(&doc).unwrap()).unwrap();
    let o = mobi(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(has_fail(&json(&o)));
}

#[test]
fn exit_zero_iff_no_failures() {
    let cases: Vec<Vec<String>> = vec![
        vec!["verify".into(), fixture("imm1.json"), "--derived".into()],
        vec!["verify".into(), fixture("imm3.json"), "--profile".into(), "imm-star".into()],
        vec!["verify".into(), fixture("section4-imm.json"), "--derived".into()],
        vec!["verify".into(), "example:ring-generic".into(), "--param".into(), "dim=2".into(), "--profile".into(), "full-medial".into()],
        vec!["verify".into(), "example:mod-odd".into(), "--param".into(), "n=2".into(), "--profile".into(), "full-medial".into()],
        vec!["verify".into(), fixture("interval.json"), "--samples".into(), "200".into()],
        vec!["roundtrip".into(), fixture("z5.json")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = mobi(&args);
        let c = code(&o);
        assert!(c == 0 || c == 1, "{args:?}: {c}");
        assert_eq!(c == 0, !has_fail(&json(&o)), "{args:?}");
    }
}

#[test]
fn usage_errors() {
    assert_eq!(code(&mobi(&[])), 3);
    assert_eq!(code(&mobi(&["frobnicate"])), 3);
    assert_eq!(code(&mobi(&["verify", "/no/such/file.json"])), 3);
    assert_eq!(code(&mobi(&["verify", "example:no-such-thing"])), 3);
    assert_eq!(code(&mobi(&["verify", "--profile", "bogus", &fixture("z5.json")])), 3);
    assert_eq!(code(&mobi(&["verify", "--param", "n=3", &fixture("z5.json")])), 3);
    assert_eq!(code(&mobi(&["example", "--id", "mod-odd", "--param", "n"])), 3);
    assert_eq!(code(&mobi(&["convert", "--to", "mobi", "--via", "inverse", &fixture("z5.json")])), 3);
    assert_eq!(code(&mobi(&["convert", "--to", "mobi", &fixture("example6.json")])), 3);
    assert_eq!(code(&mobi(&["iso", &fixture("z5.json"), &fixture("example6.json")])), 3);
    let o = mobi(&["example", "--id", "semiring-note"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "precondition");
    assert_eq!(code(&mobi(&["--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--derived", "--samples", "300", "--seed", "9", "example:planar"],
        vec!["enumerate", "--order", "5"],
        vec!["convert", "--to", "ring", "example:imm1"],
    ] {
        let a = mobi(&args);
        let b = mobi(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
    let a = mobi(&["verify", "--samples", "100", "--seed", "1", "example:interval-third"]);
    let b = mobi(&["verify", "--samples", "100", "--seed", "2", "example:interval-third"]);
    assert_ne!(a.stdout, b.stdout);
    assert_eq!(json(&a)["reports"][0]["sample"]["seed"], 1);
}

#[test]
fn conversions_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &str, &[&str]); 9] = [
        ("example6.json", "imm", &[]),
        ("example6.json", "ring", &[]),
        ("imm1.json", "ring", &[]),
        ("imm1.json", "mobi", &[]),
        ("imm1.json", "mobi", &["--via", "inverse"]),
        ("z5.json", "mobi", &[]),
        ("z5.json", "imm", &[]),
        ("interval.json", "imm", &[]),
        ("example:field-line", "ring", &[]),
    ];
    for (k, (input, to, extra)) in cases.iter().enumerate() {
        let out = dir.path().join(format!("out{k}.json"));
        let mut args = vec!["convert", "--to", to, "-o", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let input = if input.starts_with("example:") { input.to_string() } else { fixture(input) };
        args.push(&input);
        let o = mobi(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = mobi(&["verify", "--samples", "200", out.to_str().unwrap()]);
        assert_eq!(code(&v), 0, "{args:?}: {}", String::from_utf8_lossy(&v.stderr));
    }
}

#[test]
fn fixtures_match_the_example_verb() {
    let cases: [(&str, &[&str]); 9] = [
        ("three-element.json", &["--id", "three-element"]),
        ("example6.json", &["--id", "three-element"]),
        ("section4-imm.json", &["--id", "section4-imm"]),
        ("imm1.json", &["--id", "imm1"]),
        ("imm2.json", &["--id", "imm2"]),
        ("imm3.json", &["--id", "imm3"]),
        ("interval.json", &["--id", "interval"]),
        ("reciprocal-interval.json", &["--id", "reciprocal-interval"]),
        ("z5.json", &["--id", "zmod", "--param", "n=5"]),
    ];
    for (file, args) in cases {
        let mut argv = vec!["example"];
        argv.extend_from_slice(args);
        let o = mobi(&argv);
        assert_eq!(code(&o), 0);
        assert_eq!(o.stdout, std::fs::read(fixtures().join(file)).unwrap(), "{file}");
    }
}

#[test]
fn isomorphism_verb() {
    let dir = tempfile::tempdir().unwrap();
    let z3 = dir.path().join("z3.json");
    let o = mobi(&["convert", "--to", "mobi", "-o", z3.to_str().unwrap(), "example:zmod", "--param", "n=3"]);
    assert_eq!(code(&o), 0);
    let (e6, z3) = (fixture("example6.json"), z3.to_str().unwrap().to_string());

    let o = mobi(&["iso", &e6, &z3]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["isomorphic"], true);

    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"map": {"0": "0", "½": "2", "1": "1"}}"#).unwrap();
    assert_eq!(code(&mobi(&["iso", &e6, &z3, "--map", good.to_str().unwrap()])), 0);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"map": {"0": "0", "½": "1", "1": "2"}}"#).unwrap();
    assert_eq!(code(&mobi(&["iso", &e6, &z3, "--map", bad.to_str().unwrap()])), 1);
    let partial = dir.path().join("partial.json");
    std::fs::write(&partial, r#"{"map": {"0": "0"}}"#).unwrap();
    assert_eq!(code(&mobi(&["iso", &e6, &z3, "--map", partial.to_str().unwrap()])), 1);

    let phi = dir.path().join("phi.json");
    std::fs::write(&phi, r#"{"mobius": ["0", "1", "1", "0"]}"#).unwrap();
    let o = mobi(&["iso", &fixture("interval.json"), &fixture("reciprocal-interval.json"), "--map", phi.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let doc = json(&o);
    assert_eq!(doc["certificate"]["status"], "pass");
    assert!(doc["certificate"]["checked"].as_u64().unwrap() >= 1000);
    let o = mobi(&["iso", "example:interval", "example:interval-third", "--map", phi.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn roundtrip_verb() {
    for input in ["example:three-element", "example:imm1", "example:zmod"] {
        let mut args = vec!["roundtrip", input];
        if input == "example:zmod" {
            args.extend(["--param", "n=9"]);
        }
        let o = mobi(&args);
        assert_eq!(code(&o), 0, "{input}");
        assert_eq!(json(&o)["report"]["verdict"], "pass");
    }
    assert_eq!(code(&mobi(&["roundtrip", &fixture("section4-imm.json")])), 2);
    assert_eq!(code(&mobi(&["convert", "--to", "ring", &fixture("reciprocal-interval.json")])), 2);
}
