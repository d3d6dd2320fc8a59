use std::process::{Command, Output};

use serde_json::Value;

fn strato(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strato"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = strato(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).expect("one JSON document")
}

#[test]
fn expect_golden_outputs() {
    assert_eq!(stdout(&["expect", "--word", "0,1,1,0,0"]), "1/48 * t^4");
    assert_eq!(stdout(&["expect", "--word", "0,1,1,0,0,1"]), "0");
    assert_eq!(stdout(&["expect", "--word", "2,2,1,1,3,3"]), "1/48 * t^3");
    let out = stdout(&["expect", "--word", "2,2,0,1,1,3,3,0,0,0", "--t", "1"]);
    assert_eq!(out, "1/40320 * t^7\nat t = 1: 1/40320");
    assert_eq!(stdout(&["expect", "--word", ""]), "1");
}

#[test]
fn expect_json_schema() {
    let v = json(&["expect", "--word", "1,1", "--t", "3/2"]);
    assert_eq!(v["word"], serde_json::json!([1, 1]));
    assert_eq!(v["coeff"], "1/2");
    assert_eq!(v["power"], 1);
    assert_eq!(v["value"], "3/4");
    let v = json(&["expect", "--word", "1"]);
    assert!(v.get("value").is_none());
    assert_eq!(v["coeff"], "0");
    assert_eq!(v["power"], 0);
}

#[test]
fn decompose_outputs() {
    assert_eq!(stdout(&["decompose", "--word", "1,1"]), "I[1,1] + 1/2 I[0]");
    assert_eq!(stdout(&["decompose", "--word", "0,1"]), "I[0,1]");
    assert_eq!(
        stdout(&["decompose", "--word", "1,1,1"]),
        "I[1,1,1] + 1/2 I[0,1] + 1/2 I[1,0]"
    );
    let v = json(&["decompose", "--word", "1,1,1"]);
    assert_eq!(v["word"], serde_json::json!([1, 1, 1]));
    assert_eq!(
        v["terms"],
        serde_json::json!([
            {"word": [0, 1], "coeff": "1/2"},
            {"word": [1, 0], "coeff": "1/2"},
            {"word": [1, 1, 1], "coeff": "1"},
        ])
    );
}

#[test]
fn table_outputs() {
    let text = stdout(&["table", "--max-len", "2", "--drivers", "1"]);
    let words: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(words, ["[]", "[0]", "[0,0]", "[1,1]"]);
    assert_eq!(
        stdout(&["table", "--max-len", "0", "--drivers", "1"])
            .lines()
            .count(),
        2
    );
    assert_eq!(
        stdout(&["table", "--max-len", "4", "--drivers", "1"])
            .lines()
            .count(),
        13
    );

    let v = json(&["table", "--max-len", "3", "--drivers", "1"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1 + 1 + 2 + 3);
    let row = rows
        .iter()
        .find(|r| r["word"] == serde_json::json!([0, 1, 1]))
        .unwrap();
    assert_eq!(row["p_num"], "1");
    assert_eq!(row["p_den"], "2");
    assert_eq!(row["q"], 2);
    assert_eq!(row["coeff"], "1/4");
    assert_eq!(row["power"], 2);
}

#[test]
fn simulate_outputs() {
    let text = stdout(&[
        "simulate", "--word", "0", "--t", "1", "--paths", "10", "--steps", "8", "--seed", "1",
    ]);
    assert!(text.contains("mean       1.00000"), "{text}");
    assert!(text.contains("std_error  0\n"), "{text}");
    assert!(text.contains("exact      1"), "{text}");
    assert!(!text.contains("\nz "), "{text}");

    let v = json(&[
        "simulate", "--word", "1,1", "--paths", "100000", "--steps", "256", "--seed", "42",
    ]);
    assert_eq!(v["exact"], "1/2");
    let mean = v["mean"].as_f64().unwrap();
    let se = v["std_error"].as_f64().unwrap();
    assert!((mean - 0.5).abs() <= 4.0 * se + 0.01);
    assert!(v["z"].is_f64());
    assert_eq!(v["config"]["steps"], 256);

    let v = json(&[
        "simulate", "--word", "0,1", "--paths", "100000", "--steps", "64", "--seed", "7",
    ]);
    assert_eq!(v["exact"], "0");
    assert!(v["mean"].as_f64().unwrap().abs() <= 4.0 * v["std_error"].as_f64().unwrap());
}

#[test]
fn text_and_json_carry_the_same_values() {
    let args = [
        "simulate", "--word", "2,2", "--paths", "5000", "--steps", "32", "--seed", "3",
    ];
    let text = stdout(&args);
    let v = json(&args);
    let field = |name: &str| {
        text.lines()
            .find_map(|l| l.strip_prefix(name))
            .map(|s| s.trim().to_string())
            .unwrap()
    };
    let mean: f64 = field("mean").parse().unwrap();
    assert!((mean - v["mean"].as_f64().unwrap()).abs() < 1e-5);
    assert_eq!(field("exact"), v["exact"].as_str().unwrap());
}

#[test]
fn exit_codes() {
    for args in [
        &["expect", "--word", "1,x"][..],
        &["expect", "--word", "1,-1"],
        &["expect", "--word", "1", "--t", "-1"],
        &["expect", "--word", "1", "--t", "abc"],
        &["decompose"],
        &["simulate", "--word", "1", "--paths", "0"],
        &["simulate", "--word", "1", "--t", "-2"],
        &["simulate", "--word", "1", "--threads", "0"],
        &["table", "--max-len", "3", "--drivers", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(strato(args).status.code(), Some(2), "{args:?}");
    }
    for args in [
        &["decompose", "--word", "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0"][..],
        &["table", "--max-len", "21", "--drivers", "1"],
        &[
            "simulate",
            "--word",
            "1,1",
            "--paths",
            "100000000",
            "--steps",
            "1000",
        ],
    ] {
        assert_eq!(strato(args).status.code(), Some(3), "{args:?}");
    }
    let out = strato(&["expect", "--word", "1,x"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"x\""));
}
