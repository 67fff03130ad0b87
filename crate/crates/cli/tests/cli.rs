use std::process::{Command, Output};

use opclass::codescent::{CategoryJson, FiniteCategory};

fn opclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn factorize_identity() {
    let o = opclass(&["factorize", r#"{"images":[1,2,3],"target":3}"#]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["monotone"]["fibres"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["permutation"], serde_json::json!([1, 2, 3]));
}

#[test]
fn factorize_splits_a_fibre() {
    let v = json(&opclass(&["factorize", r#"{"images":[2,1,2],"target":2}"#]));
    assert_eq!(v["monotone"]["fibres"], serde_json::json!([1, 2]));
    assert_eq!(v["permutation"], serde_json::json!([2, 1, 3]));
}

#[test]
fn factorize_rejects_malformed_input() {
    for bad in [r#"{"images":[3,1],"target":2}"#, r#"{"images":[0],"target":1}"#, r#"{"images":"x"}"#, "{"] {
        let o = opclass(&["factorize", bad]);
        assert_eq!(code(&o), 2, "{bad}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    }
}

#[test]
fn braid_eq_exit_codes() {
    let a = r#"{"strands":3,"word":[1,2,1]}"#;
    let b = r#"{"strands":3,"word":[2,1,2]}"#;
    let c = r#"{"strands":3,"word":[1,2]}"#;
    assert_eq!(code(&opclass(&["braid", "eq", a, b])), 0);
    assert_eq!(code(&opclass(&["braid", "eq", a, c])), 1);
    assert_eq!(code(&opclass(&["braid", "eq", a, r#"{"strands":2,"word":[1]}"#])), 2);
}

#[test]
fn braid_nf_cancels() {
    let o = opclass(&["braid", "nf", r#"{"strands":3,"word":[1,2,1,-2]}"#, "--diagram"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("\"word\": [\n    2,\n    1\n  ]"), "{out}");
    assert!(out.contains(" \\ /"));
}

#[test]
fn vine_nf_of_normal_vine_is_unchanged() {
    let v = r#"{"strands":3,"braid":[1],"fibres":[2,1]}"#;
    let once = stdout(&opclass(&["vine", "nf", v]));
    let body = &once[once.find('{').unwrap()..];
    let again = stdout(&opclass(&["vine", "nf", body]));
    assert_eq!(once, again);
}

#[test]
fn merge_after_double_cross() {
    let crossed = r#"{"strands":2,"braid":[1,1],"fibres":[2]}"#;
    let plain = r#"{"strands":2,"braid":[],"fibres":[2]}"#;
    assert_eq!(code(&opclass(&["vine", "eq", crossed, plain])), 0);
    let kept = r#"{"strands":2,"braid":[1,1],"fibres":[1,1]}"#;
    let apart = r#"{"strands":2,"braid":[],"fibres":[1,1]}"#;
    assert_eq!(code(&opclass(&["vine", "eq", kept, apart])), 1);
}

#[test]
fn vine_compose_checks_arity() {
    let a = r#"{"strands":2,"braid":[1],"fibres":[1,1]}"#;
    let b = r#"{"strands":3,"braid":[],"fibres":[3]}"#;
    assert_eq!(code(&opclass(&["vine", "compose", a, b])), 2);
    let c = r#"{"strands":2,"braid":[],"fibres":[2]}"#;
    let o = opclass(&["vine", "compose", a, c]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"fibres\": [\n    2\n  ]"));
}

#[test]
fn operad_check() {
    let o = opclass(&["operad", "check", "Com", "--bound", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("equations hold"));
    assert_eq!(code(&opclass(&["operad", "check", "Ass->Com", "--morphism", "--bound", "3"])), 0);
    assert_eq!(code(&opclass(&["operad", "check", "Nope"])), 2);
}

#[test]
fn operad_check_flags_a_broken_table() {
    let dir = std::env::temp_dir().join(format!("opclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ass.json");
    let o = opclass(&["operad", "tabulate", "Ass", "--bound", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(code(&opclass(&["operad", "check", path.to_str().unwrap(), "--bound", "3"])), 0);
    let mut spec: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for a in spec["action"].as_array_mut().unwrap() {
        a["result"] = a["op"].clone();
    }
    std::fs::write(&path, serde_json::to_string(&spec).unwrap()).unwrap();
    assert_ne!(code(&opclass(&["operad", "check", path.to_str().unwrap(), "--bound", "3"])), 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn classifier_hom_and_compose() {
    let o = opclass(&["classifier", "hom", "Com->Com", "(*,*; c2)", "(*,*,*; c3)", "--json"]);
    assert_eq!(code(&o), 0);
    let homs = json(&o);
    assert_eq!(homs.as_array().unwrap().len(), 9);
    let into_one = json(&opclass(&["classifier", "hom", "Com->Com", "4", "2", "--json"]));
    let f = serde_json::to_string(&homs[0]).unwrap();
    let g = serde_json::to_string(&into_one[0]).unwrap();
    let o = opclass(&["classifier", "compose", "Com->Com", &f, &g]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("fn[1, 1]->1 (c2)"));
    assert_eq!(code(&opclass(&["classifier", "compose", "Com->Com", &g, &f])), 2);
}

#[test]
fn classifier_rejects_unknown_object() {
    assert_eq!(code(&opclass(&["classifier", "hom", "id:Com", "(*; c9)", "1"])), 2);
    assert_eq!(code(&opclass(&["classifier", "hom", "id:Com", "99", "1"])), 2);
}

fn prop(operad: &str, size: &str) -> FiniteCategory {
    let o = opclass(&["prop", "generate", operad, "--max-size", size]);
    assert_eq!(code(&o), 0);
    let json: CategoryJson = serde_json::from_str(&stdout(&o)).unwrap();
    FiniteCategory::from_json(&json).unwrap()
}

#[test]
fn prop_com_has_function_counts() {
    let c = prop("Com", "2");
    for (m, row) in c.hom_counts().iter().enumerate() {
        for (n, &k) in row.iter().enumerate() {
            assert_eq!(k, n.pow(m as u32), "hom({m},{n})");
        }
    }
    c.check_associativity().unwrap();
}

#[test]
fn prop_ass_counts() {
    let c = prop("Ass", "2");
    let sizes: Vec<usize> = c.objects().iter().map(|o| o.matches('*').count()).collect();
    assert_eq!(sizes, [0, 1, 2, 2]);
    // hom(m, n) over a fixed target ordering: one choice of ordering per
    // fibre, and the induced order must match.
    assert_eq!(c.hom_counts()[1], [0, 1, 2, 2]);
    assert_eq!(c.hom_counts()[2], [0, 1, 3, 3]);
}

#[test]
fn prop_is_deterministic() {
    let a = opclass(&["prop", "generate", "Ass", "--max-size", "3", "--format", "dot"]);
    let b = opclass(&["--sequential", "prop", "generate", "Ass", "--max-size", "3", "--format", "dot"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph \"id:Ass\""));
}

#[test]
fn prop_unknown_operad() {
    assert_eq!(code(&opclass(&["prop", "generate", "Nope"])), 2);
}

#[test]
fn codescent_run_compares() {
    let o = opclass(&["codescent", "run", "Ass->Com", "--bound", "2", "--compare-classifier"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("crossed axioms: pass"));
    assert!(out.contains("classifier comparison: pass"));
    assert_eq!(code(&opclass(&["codescent", "run", "BCom->BCom"])), 2);
}

#[test]
fn quotient_of_file_and_morphism() {
    let o = opclass(&["quotient", "isos", "--morphism", "id:Ass", "--max-size", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let q: CategoryJson = serde_json::from_str(&stdout(&o)).unwrap();
    let q = FiniteCategory::from_json(&q).unwrap();
    assert_eq!(q.hom_counts(), [[1, 1, 1], [0, 1, 2], [0, 1, 3]]);
    let c = stdout(&opclass(&["prop", "generate", "Com", "--max-size", "2"]));
    let o = opclass(&["quotient", "isos", &c]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 objects, 11 arrows -> 3 objects, 8 arrows"));
}

#[test]
fn verify_suites() {
    let o = opclass(&["verify", "noncatead"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS"));
    let o = opclass(&["verify", "nope"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("smc"));
    assert_eq!(code(&opclass(&["verify", "idempotent"])), 1);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&opclass(&["factorize"])), 2);
    assert_eq!(code(&opclass(&["braid", "nf", "{}", "--bogus"])), 2);
}
