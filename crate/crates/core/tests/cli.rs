mod common;

use std::path::Path;
use std::process::Command;

use common::spec_path;
use glorder::cli;
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_glorder"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run(args: &[&str]) -> cli::Outcome {
    let mut full = vec!["glorder".to_string()];
    full.extend(args.iter().map(|s| s.to_string()));
    cli::run(full)
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&value).unwrap()
}

fn assert_valid(name: &str, out: &str) {
    let value: Value =
        serde_json::from_str(out).unwrap_or_else(|e| panic!("{name}: not JSON ({e}):\n{out}"));
    let v = schema(name);
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{name} output violates schema: {errors:?}"
    );
}

#[test]
fn golden_line_dot() {
    let (code, out, _) = bin(&["quiver", "--format", "dot", &spec_path("spec_d1_p222.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph quiver"));
    assert_eq!(out.matches("[label=\"P(").count(), 5);
    assert_eq!(out.matches(" -> ").count(), 6);
    for i in 1..=3 {
        assert_eq!(out.matches(&format!("label=\"x{i}\"")).count(), 2);
    }
}

#[test]
fn golden_plane_interval_and_rigidity() {
    let (code, out, _) = bin(&["interval", &spec_path("spec_d2_p2222.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 17);
    let (code, out, _) = bin(&["rigidity", &spec_path("spec_d2_p2222.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        "OK: all Ext^i, i>0 vanish; ell range [-2,2]"
    );
}

#[test]
fn golden_line_text_relation() {
    let out = run(&["quiver", &spec_path("spec_d1_p222.json")]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.contains("x3.x3 - x1.x1 + x2.x2 = 0"),
        "{}",
        out.stdout
    );
}

#[test]
fn exit_codes() {
    let degenerate = spec_path("spec_d2_degenerate.json");
    assert_eq!(run(&["validate", &degenerate]).code, 1);
    assert_eq!(run(&["cartan", &degenerate]).code, 1);
    // n <= d for quiver
    assert_eq!(run(&["quiver", &spec_path("spec_d2_p3.json")]).code, 2);
    assert_eq!(
        run(&["frobnicate", &spec_path("spec_d1_p222.json")]).code,
        2
    );
    assert_eq!(run(&["cartan", "/nonexistent/spec.json"]).code, 2);
    assert_eq!(
        run(&["cartan", "--format", "dot", &spec_path("spec_d1_p222.json")]).code,
        2
    );
    assert_eq!(
        run(&["quiver", "--pivot", "1,1", &spec_path("spec_d1_p222.json")]).code,
        2
    );
    assert_eq!(run(&["--help"]).code, 0);

    let dir = std::env::temp_dir().join(format!("glorder-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"d\": 1, \"weights\": [2,").unwrap();
    assert_eq!(run(&["validate", bad.to_str().unwrap()]).code, 2);
    let zero = dir.join("zero.json");
    std::fs::write(
        &zero,
        r#"{"d": 1, "weights": [0], "hyperplanes": [[1, 0]]}"#,
    )
    .unwrap();
    assert_eq!(run(&["validate", zero.to_str().unwrap()]).code, 2);
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, _, err) = bin(&["quiver", &spec_path("spec_d2_p3.json")]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn pivot_override_changes_relation() {
    let spec = spec_path("spec_d1_p222.json");
    let out = run(&["quiver", "--format", "json", "--pivot", "2,3", &spec]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    // with B = {2, 3} the relation expresses x1^2 through x2^2 and x3^2
    let terms = v["relations"][0]["terms"].as_array().unwrap();
    assert_eq!(terms[0]["path"], serde_json::json!([1, 1]));
    assert_eq!(terms.len(), 3);
    assert_ne!(
        out.stdout,
        run(&["quiver", "--format", "json", &spec]).stdout
    );
}

fn invocations() -> Vec<(&'static str, Vec<String>)> {
    let mut all = Vec::new();
    let specs = ["spec_d1_p222.json", "spec_d2_p2222.json", "spec_d2_p3.json"];
    for s in specs {
        let p = spec_path(s);
        let with = |cmd: &str, extra: &[&str]| {
            let mut v = vec![cmd.to_string(), "--format".into(), "json".into()];
            v.extend(extra.iter().map(|e| e.to_string()));
            v.push(p.clone());
            v
        };
        all.push(("validate", with("validate", &[])));
        all.push(("interval", with("interval", &[])));
        all.push(("cartan", with("cartan", &[])));
        all.push(("rigidity", with("rigidity", &[])));
        all.push(("endo", with("endo", &[])));
        all.push(("hilbert", with("hilbert", &["--max-degree", "3"])));
        all.push(("hilbert", with("hilbert", &["--degree", "x1-c"])));
        all.push(("regrade", with("regrade", &["--max-degree", "2"])));
        all.push(("local", with("local", &[])));
        all.push(("transport", with("transport", &["--degree", "3*x1+2*c"])));
        if s != "spec_d2_p3.json" {
            all.push(("quiver", with("quiver", &[])));
        }
    }
    all.push((
        "endo",
        vec![
            "endo".into(),
            "--format".into(),
            "json".into(),
            "--associativity".into(),
            spec_path("spec_d1_p222.json"),
        ],
    ));
    all.push((
        "validate",
        vec![
            "validate".into(),
            "--format".into(),
            "json".into(),
            spec_path("spec_d2_degenerate.json"),
        ],
    ));
    all
}

#[test]
fn json_outputs_match_schemas() {
    for (name, args) in invocations() {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let out = run(&refs);
        assert!(
            out.code == 0 || name == "validate",
            "{args:?}: exit {} {}",
            out.code,
            out.stderr
        );
        assert_valid(name, &out.stdout);
    }
}

#[test]
fn spec_files_match_schema() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let v = schema("typespec");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let value: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v.is_valid(&value), "{}", path.display());
    }
}

#[test]
fn output_is_byte_identical() {
    let mut cases = invocations();
    cases.push((
        "quiver",
        vec![
            "quiver".into(),
            "--format".into(),
            "dot".into(),
            spec_path("spec_d2_p2222.json"),
        ],
    ));
    cases.push((
        "rigidity",
        vec!["rigidity".into(), spec_path("spec_d2_p2222.json")],
    ));
    for (_, args) in cases {
        let refs: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
        let first = bin(&refs);
        let second = bin(&refs);
        assert_eq!(first, second, "{args:?}");
        assert_eq!(first.1, run(&refs).stdout, "{args:?}");
    }
}
