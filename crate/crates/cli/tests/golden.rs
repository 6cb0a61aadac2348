mod common;

use common::{check_case, run_json, CASES};

#[test]
fn worked_examples_match_goldens() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    let args = ["partition", "--class", "elliptic", "--theta", "7/23", "--n", "8", "--audit"];
    assert_eq!(run_json(&args), run_json(&args));
}

#[test]
fn exit_status_tracks_counterexamples() {
    for case in CASES {
        let (code, out) = run_json(case.args);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let empty = v["counterexamples"].as_array().unwrap().is_empty();
        match code {
            0 => assert!(empty && v.get("error").is_none(), "{}", case.name),
            2 => assert!(v["error"]["kind"].is_string(), "{}", case.name),
            _ => assert!(!empty, "{}", case.name),
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    let (code, out) = run_json(&["iterate", "--class", "neg-hyp-1", "--mu1", "1", "--k", "1"]);
    assert_eq!(code, 2);
    assert!(out.contains("ParityError"));
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_brake-index"))
        .arg("frobnicate")
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
}

#[test]
fn doubled_index_for_pairs_only() {
    let (code, out) = run_json(&["index", "--config", "tests/golden/inputs/pair_curve.json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"]["ind_real"], 3);
    assert_eq!(v["results"]["doubled_index"], 6);
}

#[test]
fn negative_seeds_parse() {
    let (code, out) = run_json(&["iterate", "--class", "neg-hyp-2", "--mu1", "-3/2", "--k", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"mu1\": \"-7/2\""), "{out}");
}
