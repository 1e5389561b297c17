use std::process::{Command, Output};

use serde_json::Value;

fn gtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtc"))
        .args(args)
        .env_remove("GTC_BUDGET")
        .output()
        .expect("gtc runs")
}

fn json(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("one line of output")).expect("valid JSON")
}

#[test]
fn field_info_prime_and_extension() {
    let out = gtc(&["field-info", "--q", "5"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["alpha"], 2);
    assert_eq!(doc["exp"], serde_json::json!([1, 2, 4, 3]));
    assert!(doc.get("modulus").is_none());

    let doc = json(&gtc(&["field-info", "--q", "4"]));
    assert_eq!(doc["modulus"], serde_json::json!([1, 1, 1]));
    assert_eq!(doc["m"], 2);
}

#[test]
fn invalid_order_is_a_usage_error() {
    let out = gtc(&["field-info", "--q", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["error"], "NotPrimePower");
    assert!(doc["detail"].is_string());
}

#[test]
fn malformed_exponent_set_is_a_usage_error() {
    let out = gtc(&["build", "--q", "5", "--r", "2", "--u", "0,0;1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].is_string());
}

#[test]
fn build_round_trips_through_u() {
    let doc = json(&gtc(&["build", "--q", "5", "--r", "2", "--u", "0,0;1,0;2,0;0,1;1,1;2,1"]));
    assert_eq!(doc["n"], 16);
    assert_eq!(doc["k"], 6);
    assert_eq!(doc["generator"].as_array().unwrap().len(), 6);
    assert_eq!(doc["control"].as_array().unwrap().len(), 10);
    let u = doc["U"].as_str().unwrap().to_string();
    let again = json(&gtc(&["build", "--q", "5", "--r", "2", "--u", &u]));
    assert_eq!(again, doc);
}

#[test]
fn matrix_text_formats() {
    let out = gtc(&["--format", "csv", "matrix", "--q", "3", "--r", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0].lines().next(), Some("1,1"));
}

#[test]
fn distance_both_engines_on_reference_code() {
    let out = gtc(&[
        "distance", "--q", "5", "--r", "2", "--u", "0,0;1,0;2,0;0,1;1,1;2,1",
        "--method", "both", "--certify", "6",
    ]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["d"], 6);
    assert_eq!(doc["agree"], true);
    assert_eq!(doc["certify"]["holds"], true);
}

#[test]
fn budget_overflow_exits_three_with_bound() {
    let out = gtc(&[
        "distance", "--q", "5", "--r", "2", "--u", "0,0;1,0;2,0;0,1;1,1;2,1", "--budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let doc = json(&out);
    assert_eq!(doc["error"], "BudgetExceeded");
    assert!(doc["certified_lower_bound"].is_u64());
}

#[test]
fn empty_code_has_no_distance() {
    let out = gtc(&["distance", "--q", "5", "--r", "1", "--u", ""]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"], "EmptyCode");
}

#[test]
fn polytope_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(&path, r#"{"r":1,"ineqs":[],"bounds":[[0,4]]}"#).unwrap();
    let doc = json(&gtc(&["polytope", "--q", "5", "--file", path.to_str().unwrap()]));
    assert_eq!(doc["lattice_points"], 5);
    assert_eq!(doc["k"], 4);
}

#[test]
fn recover_from_codewords_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    // delta at the identity point generates the whole algebra
    std::fs::write(&path, "[[1,0,0,0]]").unwrap();
    let doc = json(&gtc(&["recover", "--q", "5", "--r", "1", "--codewords", path.to_str().unwrap()]));
    assert_eq!(doc["k"], 4);
    assert_eq!(doc["zero_ideal"], false);

    std::fs::write(&path, "[[0,0,0,0]]").unwrap();
    let doc = json(&gtc(&["recover", "--q", "5", "--r", "1", "--codewords", path.to_str().unwrap()]));
    assert_eq!(doc["zero_ideal"], true);
}

#[test]
fn search_is_deterministic_without_timestamps() {
    let args = [
        "search", "--q", "4", "--r", "2", "--k", "3", "--samples", "4", "--seed", "11",
        "--no-timestamp",
    ];
    let a = gtc(&args);
    let b = gtc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let rec: Value = serde_json::from_str(line).unwrap();
        assert_eq!(rec["k"], 3);
        assert!(rec["d"].is_u64());
        assert!(rec.get("timestamp").is_none());
    }
}

#[test]
fn search_appends_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("runs.jsonl");
    let p = path.to_str().unwrap();
    for _ in 0..2 {
        let out = gtc(&["search", "--q", "3", "--r", "1", "--k", "1", "--samples", "2", "--out", p]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| serde_json::from_str::<Value>(l).unwrap()["timestamp"].is_u64()));
}

#[test]
fn example_self_check_passes() {
    let out = gtc(&["example"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["d"], 6);
}
