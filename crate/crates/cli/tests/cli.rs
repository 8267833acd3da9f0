//! End-to-end runs of the `esakia` binary on the bundled files.

use std::path::PathBuf;
use std::process::Command;

use esakia::canon::enumerate_posets_upto;
use esakia::format::{self, StructureFile};
use esakia::lattice::downset_lattice;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_esakia"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn verdicts(stdout: &str) -> Vec<(String, String)> {
    stdout
        .lines()
        .map(|l| {
            let mut parts = l.splitn(3, ' ');
            (
                parts.next().unwrap().to_string(),
                parts.next().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn replicate_reproduces_the_reference_table() {
    let (code, out, _) = run(&["replicate-paper"]);
    assert_eq!(code, 0, "{out}");
    let v = verdicts(&out);
    assert!(v.iter().all(|(verdict, _)| verdict == "PASS"));
    assert!(v.iter().any(|(_, id)| id == "golden/f4/spectral_open"));
    assert!(v.iter().any(|(_, id)| id == "derived/f2/es_star"));
}

#[test]
fn x4_is_esakia_and_ne_is_not() {
    let (code, out, _) = run(&["check", "--fanspace", &data("x4.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS fanspace/priestley") && out.contains("PASS fanspace/esakia"));
    let (code, out, _) = run(&["check", &data("ne.json"), "--verify-witnesses"]);
    assert_eq!(code, 1);
    assert!(out.contains("PASS fanspace/priestley"));
    assert!(out.contains("FAIL fanspace/esakia"));
    assert!(out.contains("PASS verify/fanspace/esakia"), "{out}");
}

#[test]
fn classify_reports_flags_and_reproducible_witnesses() {
    let (code, out, _) = run(&["classify", "--map", &data("f1.json"), "--verify-witnesses"]);
    assert_eq!(code, 1);
    let v = verdicts(&out);
    let get = |id: &str| v.iter().find(|(_, i)| i == id).map(|(v, _)| v.as_str());
    assert_eq!(get("classify/es_minus"), Some("PASS"));
    assert_eq!(get("classify/es"), Some("FAIL"));
    assert_eq!(get("classify/es_plus"), Some("FAIL"));
    assert_eq!(get("classify/es_star"), Some("PASS"));
    assert_eq!(get("classify/es_dagger"), Some("FAIL"));
    for id in ["es", "es_plus", "es_dagger"] {
        assert_eq!(get(&format!("verify/classify/{id}")), Some("PASS"), "{out}");
    }
    assert!(v
        .iter()
        .filter(|(_, i)| i.starts_with("classify/routes/"))
        .all(|(v, _)| v == "PASS"));
}

#[test]
fn classify_with_deeper_bases_agrees() {
    let (_, shallow, _) = run(&["classify", "--map", &data("f2.json")]);
    let (_, deep, _) = run(&["classify", "--map", &data("f2.json"), "--basis-depth", "3"]);
    assert_eq!(verdicts(&shallow), verdicts(&deep));
}

#[test]
fn dualize_examples() {
    let parse = |out: &str| format::parse(out).unwrap();
    let (code, out, _) = run(&["dualize", &data("d2.json"), "--pf"]);
    assert_eq!(code, 0);
    let StructureFile::Poset(p) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!((p.size, p.leq.len()), (2, 0));

    let (_, out, _) = run(&["dualize", &data("c2.json"), "--ideals"]);
    let StructureFile::Lattice(l) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!(l.to_lattice().unwrap().size(), 2);

    let (_, out, _) = run(&["dualize", &data("c1.json"), "--pf"]);
    let StructureFile::Poset(p) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!(p.size, 0);

    let (_, out, _) = run(&["dualize", &data("chain3.json"), "--clopup"]);
    let StructureFile::Lattice(l) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!(l.to_lattice().unwrap().size(), 4);

    // C2 has spectrum {↑1, C2}, and its admissibles give back a 2-chain.
    let (_, out, _) = run(&["dualize", &data("c2.json"), "--spectrum"]);
    let StructureFile::Poset(p) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!(p.size, 2);
    let (_, out, _) = run(&["dualize", &data("c2.json"), "--admissibles"]);
    let StructureFile::Lattice(l) = parse(&out) else {
        panic!("{out}")
    };
    assert_eq!(l.to_lattice().unwrap().size(), 2);
}

#[test]
fn enumerate_counts() {
    let count = |kind: &str, n: &str| {
        let (code, out, _) = run(&["enumerate", kind, n]);
        assert_eq!(code, 0);
        out.matches("\"kind\"").count()
    };
    assert_eq!(count("posets", "3"), 5);
    assert_eq!(count("posets", "1"), 1);
    // Birkhoff: distributive lattices of size 4 correspond to posets with
    // exactly four downsets.
    let oracle = enumerate_posets_upto(4)
        .unwrap()
        .iter()
        .filter(|p| downset_lattice(p).unwrap().size() == 4)
        .count();
    assert_eq!(count("distributive", "4"), oracle);
    assert_eq!(count("lattices", "5"), 5);
}

#[test]
fn enumerate_writes_files() {
    let dir = std::env::temp_dir().join(format!("esakia-enum-{}", std::process::id()));
    let (code, _, _) = run(&[
        "enumerate",
        "posets",
        "3",
        "--out",
        &dir.display().to_string(),
    ]);
    assert_eq!(code, 0);
    let mut names: Vec<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 5);
    assert_eq!(names[0], "poset-3-0000.json");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn roundtrips_pass() {
    let (code, out, _) = run(&["roundtrip", "--max-size", "4"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&["roundtrip", "--brw", "--max-size", "5"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn brouwerian_checks_and_relations() {
    let (code, out, _) = run(&["check", "--brouwerian", &data("d2.json")]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&[
        "check",
        "--brouwerian",
        &data("c2.json"),
        "--relation",
        &data("c2-order.json"),
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&[
        "check",
        "--brouwerian",
        &data("c2.json"),
        "--relation",
        &data("c2-graph.json"),
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL relation/generalized_priestley"), "{out}");
    let (code, out, _) = run(&["check", "--brouwerian", &data("m3.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL brouwerian/distributive"));
}

#[test]
fn lattice_and_hom_checks() {
    let (code, _, _) = run(&["check", &data("d2.json")]);
    assert_eq!(code, 0);
    let (code, out, _) = run(&["check", &data("n5.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL lattice/distributive"));
    let (code, out, _) = run(&["check", &data("c3-c2-collapse.json")]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("PASS hom/bounded_lattice") && out.contains("FAIL hom/heyting"));
    let (code, _, _) = run(&["check", &data("d2-c2-projection.json")]);
    assert_eq!(code, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("esakia-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        "{\"kind\": \"poset\", \"size\": 2, \"leq\": [], \"extra\": 1}",
    )
    .unwrap();
    let (code, _, err) = run(&["check", &bad.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown field `extra`"), "{err}");
    std::fs::write(
        &bad,
        "{\"kind\": \"poset\",\n \"size\": 2, \"leq\": [[0, 1]],}",
    )
    .unwrap();
    let (code, _, err) = run(&["check", &bad.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2 column"), "{err}");
    std::fs::write(
        &bad,
        "{\"kind\": \"lattice\", \"poset\": {\"size\": 2, \"leq\": [[0, \"x\"]]}}",
    )
    .unwrap();
    let (code, _, err) = run(&["check", &bad.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("poset.leq[0]"), "{err}");
    std::fs::write(
        &bad,
        "{\"kind\": \"poset\",\n \"size\": 2, \"leq\": [[0, 5]]}",
    )
    .unwrap();
    let (code, _, err) = run(&["check", &bad.display().to_string()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.json"), "{err}");
    let (code, _, _) = run(&["dualize", &data("chain3.json"), "--pf"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["check", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic_and_have_a_json_twin() {
    let (_, a, _) = run(&["replicate-paper", "--format", "json"]);
    let (_, b, _) = run(&["replicate-paper", "--format", "json"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    let (_, text, _) = run(&["replicate-paper"]);
    assert_eq!(v["lines"].as_array().unwrap().len(), text.lines().count());
}
