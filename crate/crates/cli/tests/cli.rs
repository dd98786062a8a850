use std::path::Path;
use std::process::{Command, Output};

fn glw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glw")).args(args).env_remove("GLW_CACHE_DIR").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn wgl_examples() {
    let out = glw(&["wgl", "(1 3 2)"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "C3 + C1^2 - N*C2");
    assert_eq!(stdout(&glw(&["wgl", "(1 3 2)", "--substitute", "chromatic"])).trim(), "x^2*N^-2");
    assert_eq!(stdout(&glw(&["wgl", ""])).trim(), "1");
    assert_eq!(stdout(&glw(&["wgl", "3,1,2", "--one-line"])).trim(), "C3 + C1^2 - N*C2");
    assert_eq!(stdout(&glw(&["wgl", "(1 3)(2 4)", "--substitute", "shifted"])).trim(), "N^6");
}

#[test]
fn coefficient_extraction() {
    let out = glw(&["wgl", "(1,3,5,2,4)", "--substitute", "chromatic", "--coeff-n", "-2"]);
    assert_eq!(stdout(&out).trim(), "-x + x^2");
    let out = glw(&["wgl", "(1 3 2)", "--coeff-n", "1"]);
    assert_eq!(stdout(&out).trim(), "-C2");
}

#[test]
fn json_output_is_valid() {
    let out = glw(&["wgl", "(1 3 2)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    let out = glw(&["info", "(1 3)(2 4)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["c"], 2);
    assert_eq!(v["a"], 2);
    assert_eq!(v["positive"], true);
    assert_eq!(v["f"], 1);
    assert_eq!(v["intersection_graph"]["edges"], serde_json::json!([[1, 2]]));
}

#[test]
fn info_text() {
    let text = stdout(&glw(&["info", "(1 3 2)"]));
    assert!(text.contains("positive: false"));
    let text = stdout(&glw(&["info", "(1)(2)(3)"]));
    assert!(text.contains(r#"intersection graph: {"n":3,"edges":[]}"#));
}

#[test]
fn verify_exit_codes() {
    let out = glw(&["verify", "pbw", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("PASS pbw"));
    let out = glw(&["verify", "divisibility", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL") && text.contains("lhs") && text.contains("rhs"));
    assert_eq!(glw(&["verify", "nope", "3"]).status.code(), Some(2));
}

#[test]
fn usage_and_parse_errors() {
    let out = glw(&["wgl", "(1 2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 4"));
    assert_eq!(glw(&["wgl", "(1 2)", "--substitute", "foo"]).status.code(), Some(2));
    assert_eq!(glw(&[]).status.code(), Some(2));
}

#[test]
fn enumerate_classes() {
    let text = stdout(&glw(&["enumerate", "chord", "4", "--classes"]));
    assert_eq!(text.lines().collect::<Vec<_>>(), ["(1 2)(3 4)", "(1 3)(2 4)"]);
    assert_eq!(stdout(&glw(&["enumerate", "all", "3"])).lines().count(), 6);
}

#[test]
fn memo_persists_between_runs() {
    let dir = std::env::temp_dir().join(format!("glw-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_glw"))
            .args(["wgl", "(1 3 5 2 4)"])
            .env("GLW_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    let file = Path::new(&dir).join("wgl-memo.json");
    assert!(file.exists());
    let saved: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(saved["version"], 1);
    assert!(!saved["entries"].as_array().unwrap().is_empty());
    assert_eq!(run().stdout, first.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
