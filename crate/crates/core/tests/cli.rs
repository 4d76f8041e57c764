use std::process::{Command, Output};

use serde_json::Value;

fn covlie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covlie"))
        .args(args)
        .output()
        .unwrap()
}

fn covlie_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covlie"))
        .args(args)
        .env("COVLIE_THREADS", threads)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_bundle() {
    let out = covlie(&["build", "--group", "Z5", "--char", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dims"]["gl_S"], 25);
    assert_eq!(v["dims"]["A_S_tau"], 10);
    assert_eq!(v["dims"]["g_S"], 10);
    assert_eq!(v["pi"]["rows"], 10);

    let v = json(&covlie(&["build", "--group", "Z1"]));
    assert!(v["dims"]
        .as_object()
        .unwrap()
        .values()
        .all(|d| d.as_u64().unwrap() <= 1));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(
        covlie(&["build", "--group", "Z6", "--char", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        covlie(&["build", "--group", "Z6", "--char", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(covlie(&["build", "--group", "Z2xZ2"]).status.code(), Some(2));
    assert_eq!(
        covlie(&["verify", "--suite", "delta", "--group", "Z2xZ2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(covlie(&["verify", "--group", "Zx"]).status.code(), Some(2));
    assert_eq!(
        covlie(&["verify", "--suite", "nope", "--group", "Z3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        covlie(&["verify", "--suite", "appendix", "--group", "Z4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        covlie_env(&["classify", "--group", "Z3"], "zero").status.code(),
        Some(2)
    );
}

#[test]
fn collapsed_group() {
    let out = covlie(&["verify", "--suite", "gs", "--group", "Z2xZ2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let dim = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "g_S dimension")
        .unwrap();
    assert!(dim["note"].as_str().unwrap().contains("g_S = 0"));
}

#[test]
fn alternate_character() {
    let out = covlie(&[
        "verify", "--suite", "affine", "--group", "Z5", "--char", "2", "--window", "3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn classify_and_markdown() {
    let v = json(&covlie(&["classify", "--group", "Z6"]));
    let labels: Vec<&str> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["type_label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["B1", "B1"]);
    let md = covlie(&["verify", "--suite", "gs", "--group", "Z3", "--format", "md"]);
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.starts_with("## gs on Z3"));
    assert!(text.contains("| pi isomorphism | pass |"));
}

#[test]
fn reports_are_byte_stable_across_thread_counts() {
    let args = ["verify", "--suite", "all", "--group", "Z3", "--window", "2"];
    let a = covlie_env(&args, "1");
    let b = covlie_env(&args, "3");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn supplied_grading_element() {
    // h for the shift of A_S^tau, Z3: the same element the search finds
    let lib = covlie::affine::twisted::chain_target(
        &covlie::group::make_character(&covlie::group::FinAbGroup::cyclic(3), 1).unwrap(),
    )
    .unwrap();
    let h = covlie::affine::twisted::find_grading_element(&lib.algebra, &lib.cartan, &lib.sigma, 3).unwrap();
    let order = h.iter().fold(1, |acc, (_, c)| num_integer::lcm(acc, c.order()));
    let coords: Vec<Value> = h
        .iter()
        .map(|(i, c)| serde_json::json!([i, c.to_string_in(order).unwrap()]))
        .collect();
    let path = std::env::temp_dir().join(format!("covlie-cli-h-{}.json", std::process::id()));
    std::fs::write(
        &path,
        serde_json::json!({"scalar_order": order, "coordinates": coords}).to_string(),
    )
    .unwrap();
    let out = covlie(&[
        "verify",
        "--suite",
        "appendix",
        "--group",
        "Z3",
        "--grading-element",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );

    // a wrong h is a verification failure, not a configuration error
    let path = std::env::temp_dir().join(format!("covlie-cli-bad-h-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"scalar_order": 1, "coordinates": []}"#).unwrap();
    let out = covlie(&[
        "verify",
        "--suite",
        "appendix",
        "--group",
        "Z3",
        "--grading-element",
        path.to_str().unwrap(),
    ]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
}
