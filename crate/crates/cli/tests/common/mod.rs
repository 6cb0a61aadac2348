use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

/// A worked example: golden file stem, arguments, expected exit status.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "classify_pos_hyp_2", args: &["classify", "--matrix", "3,4,2,3"], exit: 0 },
    Case { name: "classify_half_pos_hyp_1", args: &["classify", "--half", "--matrix", "1,-1,-1,2"], exit: 0 },
    Case { name: "classify_identity", args: &["classify", "--matrix", "1,0,0,1"], exit: 2 },
    Case { name: "iterate_neg_hyp_1", args: &["iterate", "--class", "neg-hyp-1", "--mu1", "1/2", "--k", "1..4"], exit: 0 },
    Case { name: "iterate_elliptic_degenerate", args: &["iterate", "--class", "elliptic", "--theta", "5/17", "--k", "17"], exit: 0 },
    Case { name: "iterate_pos_hyp_1", args: &["iterate", "--class", "pos-hyp-1", "--mu1", "1/2", "--k", "1..5"], exit: 0 },
    Case { name: "index_plane", args: &["index", "--config", "tests/golden/inputs/plane.json"], exit: 0 },
    Case { name: "index_trivial_cylinder", args: &["index", "--config", "tests/golden/inputs/trivial_cylinder.json"], exit: 0 },
    Case { name: "index_unbalanced_cover", args: &["index", "--config", "tests/golden/inputs/unbalanced_cover.json"], exit: 2 },
    Case { name: "partition_neg_hyp_1", args: &["partition", "--class", "neg-hyp-1", "--mu1", "1/2", "--n", "6", "--end", "neg"], exit: 0 },
    Case { name: "partition_pos_hyp_1", args: &["partition", "--class", "pos-hyp-1", "--mu1", "1/2", "--n", "4", "--end", "pos"], exit: 0 },
    Case { name: "partition_elliptic", args: &["partition", "--class", "elliptic", "--theta", "1/100", "--n", "3", "--end", "neg"], exit: 0 },
    Case { name: "verify_ech_lemma", args: &["verify", "ech-lemma", "--max-mult", "8"], exit: 0 },
    Case { name: "verify_partition", args: &["verify", "partition", "--max-n", "10", "--theta-den", "17"], exit: 0 },
    Case { name: "verify_bad_breaking", args: &["verify", "bad-breaking", "--max-d", "20"], exit: 0 },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from the crate directory with `--format json`.
/// Returns the exit status and the output with the timing field removed.
pub fn run_json(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_brake-index"))
        .current_dir(crate_dir())
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    (out.status.code().unwrap_or(-1), strip_timing(&text))
}

pub fn strip_timing(text: &str) -> String {
    let mut v: Value = serde_json::from_str(text).expect("report is JSON");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.json"))
}

/// Compares one case against its golden file, writing the file instead
/// when `UPDATE_GOLDENS` is set.
pub fn check_case(case: &Case) -> Result<(), String> {
    let (code, got) = run_json(case.args);
    if code != case.exit {
        return Err(format!("{}: exit {code}, expected {}", case.name, case.exit));
    }
    let path = golden_path(case.name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, &got).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = read(&path)?;
    if strip_timing(&want) != got {
        return Err(format!("{}: output differs from {}\n{got}", case.name, path.display()));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
