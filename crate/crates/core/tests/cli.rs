use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sbundle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbundle"))
        .args(args)
        .output()
        .expect("run sbundle")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn construct_2_2() {
    let out = sbundle(&["construct", "2", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["signature"], 16);
    assert_eq!(doc["fibration1"]["base_genus"], 2);
    assert_eq!(doc["fibration1"]["fiber_genus"], 25);
    assert_eq!(doc["fibration2"]["base_genus"], 9);
    assert_eq!(doc["fibration2"]["fiber_genus"], 4);
    assert_eq!(doc["total_chi"], 96);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
    assert_eq!(doc["tower"]["steps"][2]["name"], "D~ -> D");
}

#[test]
fn large_construction_prints_exact_integers() {
    let out = sbundle(&["construct", "20", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    // (4/3)·20·19·48·7^37
    let expected =
        num_bigint::BigInt::from(4 * 20 * 19 * 48 / 3) * num_bigint::BigInt::from(7).pow(37);
    assert!(
        text.contains(&format!("\"signature\": {expected},")),
        "{text}"
    );
}

#[test]
fn simple_construction() {
    let doc = json(&sbundle(&["simple"]));
    assert_eq!(doc["params"]["kind"], "simple_genus2");
    assert_eq!(doc["fibration1"]["fiber_genus"], 49);
    assert_eq!(doc["signature"], 32);
}

#[test]
fn pullback_records() {
    let doc = json(&sbundle(&["pullback", "2", "2", "2"]));
    assert_eq!(doc["fibration2"]["base_genus"], 17);
    assert_eq!(doc["fibration2"]["signature"], 32);
    assert_eq!(doc["fibration1"]["base_genus"], 3);
}

#[test]
fn verify_exit_zero() {
    let out = sbundle(&["verify", "5", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["summary"], "all checks passed");
    assert_eq!(doc["cases"], 17);
    assert_eq!(doc["failed"], 0);
}

#[test]
fn table_csv_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = sbundle(&[
        "table",
        "10",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("f,gf_upper,gf_witness,ekkos_upper,kotschick_lower")
    );
    assert_eq!(lines.next(), Some("4,2,\"(2,2)\",8,2/3"));
    assert_eq!(lines.next(), Some("5,,,,1/2"));
    assert_eq!(lines.next(), Some("6,9/8,\"(3,2)\",4,2/5"));
}

#[test]
fn table_json() {
    let doc = json(&sbundle(&["table", "6"]));
    assert_eq!(doc["rows"][0]["gf_upper"], "2");
    assert_eq!(doc["rows"][2]["gf_witness"]["n"], 3);
    assert!(doc["metadata"]["ekkos_upper"]
        .as_str()
        .unwrap()
        .contains("even"));
}

#[test]
fn monodromy_files() {
    let doc = json(&sbundle(&[
        "monodromy",
        &data("cyclic_genus2_degree3.json"),
    ]));
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["components"], 1);
    assert_eq!(doc["euler_char"], -10);
    assert_eq!(doc["genus"], 6);

    let doc = json(&sbundle(&[
        "monodromy",
        &data("disconnected_genus2_degree2.json"),
    ]));
    assert_eq!(doc["components"], 2);
    assert!(doc["genus"].is_null());
    assert_eq!(doc["component_genera"], serde_json::json!([2, 2]));
}

#[test]
fn shipped_cover_files_are_canonical() {
    let text = std::fs::read_to_string(data("cyclic_genus2_degree3.json")).unwrap();
    assert_eq!(
        sbundle::CoverFile::from_json(&text).unwrap().to_json(),
        text
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_relation = dir.path().join("bad.json");
    std::fs::write(
        &bad_relation,
        r#"{"base_genus":0,"degree":2,"handles":[],"branches":["(0 1)"]}"#,
    )
    .unwrap();
    let out = sbundle(&["monodromy", bad_relation.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["valid"], false);

    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, "{ not json").unwrap();
    assert_eq!(
        sbundle(&["monodromy", malformed.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        sbundle(&["monodromy", "/nonexistent/cover.json"])
            .status
            .code(),
        Some(2)
    );

    assert_eq!(sbundle(&[]).status.code(), Some(1));
    assert_eq!(sbundle(&["construct", "1", "3"]).status.code(), Some(1));
    assert_eq!(sbundle(&["construct", "two", "3"]).status.code(), Some(1));
    assert_eq!(
        sbundle(&["--format", "csv", "simple"]).status.code(),
        Some(1)
    );
    assert_eq!(sbundle(&["--help"]).status.code(), Some(0));
}
