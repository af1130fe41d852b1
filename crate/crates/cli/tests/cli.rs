use std::process::{Command, Output};

use serde_json::Value;

fn seqcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqcube")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = seqcube(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn code(args: &[&str]) -> (i32, String) {
    let out = seqcube(args);
    (out.status.code().unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn linear_complexity_examples() {
    assert_eq!(json(&["lc", "--bits", "11110000"])["result"]["linear_complexity"], 5);
    assert_eq!(json(&["lc", "--positions", "0", "--n", "3"])["result"]["linear_complexity"], 8);
    assert_eq!(json(&["lc", "--bits", "00000000"])["result"]["linear_complexity"], 0);
    assert_eq!(json(&["lc", "--hex", "c0", "--n", "3"])["result"]["linear_complexity"], 7);
    assert!(stdout(&["lc", "--bits", "11110000"]).contains("linear complexity: 5"));
}

#[test]
fn error_complexity_examples() {
    let r = json(&["klc", "--bits", "11110000", "--k", "3"]);
    assert_eq!(r["result"]["k_error_linear_complexity"], 5);
    assert_eq!(r["result"]["stable"], true);
    let r = json(&["klc", "--bits", "11110000", "--k", "4"]);
    assert_eq!(r["result"]["k_error_linear_complexity"], 0);
    assert_eq!(r["result"]["stable"], false);
    let r = json(&["klc", "--positions", "0,1,3,4,7,8", "--n", "4", "--k", "2"]);
    assert_eq!(r["result"]["k_error_linear_complexity"], 10);
    assert_eq!(json(&["kmin", "--positions", "0,1,3,4,7,8", "--n", "4"])["result"]["kmin"], 2);
    assert_eq!(json(&["maxklc", "--n", "3", "--k", "3"])["result"]["max_k_error_linear_complexity"], 5);
}

#[test]
fn spectrum_reports_oracle_points() {
    let r = json(&["spectrum", "--positions", "0,1,3,4,7,8", "--n", "4"]);
    let points: Vec<(u64, u64)> = r["result"]["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["k"].as_u64().unwrap(), p["complexity"].as_u64().unwrap()))
        .collect();
    assert_eq!(points, vec![(0, 15), (2, 10), (4, 3), (6, 0)]);
    assert!(r["budget"]["patterns_examined"].is_string());
}

#[test]
fn decomposition_lists_cubes_ascending() {
    let r = json(&["decompose", "--positions", "0,1,3,4,7,8", "--n", "4"]);
    let cubes = r["result"]["cubes"].as_array().unwrap();
    let lcs: Vec<u64> = cubes.iter().map(|c| c["linear_complexity"].as_u64().unwrap()).collect();
    assert_eq!(lcs, vec![8, 12, 15]);
    assert_eq!(cubes[0]["positions"], serde_json::json!([0, 8]));
    assert_eq!(r["result"]["predicted_critical_ks"], serde_json::json!([2, 4, 6]));
    assert!(r["result"]["lone_vertex"].is_null());
}

#[test]
fn construct_and_recognize() {
    let r = json(&["construct", "--n", "4", "--edges", "0,3", "--offsets", "9,1"]);
    assert_eq!(r["result"]["cube"]["positions"], serde_json::json!([0, 1, 8, 9]));
    assert_eq!(r["result"]["cube"]["linear_complexity"], 7);
    let r = json(&["recognize", "--bits", "11110000"]);
    assert_eq!(r["result"]["cube"]["edges"], serde_json::json!([0, 1]));
    assert_eq!(json(&["recognize", "--positions", "0,1,2", "--n", "3"])["result"]["is_cube"], false);
}

#[test]
fn census_counts_are_decimal_strings() {
    let r = json(&["census", "--n", "3", "--edges", "0", "--verify"]);
    assert_eq!(r["result"]["predicted"], "16");
    assert_eq!(r["result"]["observed"], "16");
    assert_eq!(r["result"]["agrees"], true);
    let r = json(&["census", "--n", "3", "--edges", "0", "--edges", "2"]);
    assert_eq!(r["result"]["predicted"], "32");
    let r = json(&["census", "--n", "30", "--edges", "0,1,2,3,4,5,6"]);
    let big = r["result"]["predicted"].as_str().unwrap();
    assert!(big.len() > 20, "{big}");
    assert_eq!(json(&["census", "--n", "4", "--edges", "0,1", "--edges", "0,3"])["result"]["predicted"], "1024");
}

#[test]
fn quad_audit_lists_known_witness() {
    let text = stdout(&["quad-audit", "--n", "3"]);
    assert!(text.contains("{0,1,2,3} pairs (0,3) (1,2): formula 6 actual 5"), "{text}");
}

#[test]
fn scan_reports_tallies() {
    let r = json(&["scan", "--n", "3"]);
    assert_eq!(r["result"]["visited"], 256);
    assert_eq!(r["result"]["mismatched"], 0);
    assert_eq!(r["result"]["complete"], true);
    let (c, err) = code(&["scan", "--n", "4", "--filter", "all_even_weight", "--max-weight", "6", "--budget-weight", "2"]);
    assert_eq!(c, 4, "{err}");
}

#[test]
fn machine_output_is_reproducible_across_thread_counts() {
    let args = ["scan", "--n", "4", "--max-weight", "6", "--json"];
    let runs: Vec<Vec<u8>> = ["1", "4", "4"]
        .iter()
        .map(|t| {
            let out = Command::new(env!("CARGO_BIN_EXE_seqcube"))
                .args(args)
                .env("SEQCUBE_THREADS", t)
                .output()
                .unwrap();
            assert!(out.status.success());
            out.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[1], runs[2]);
    let spectrum = ["spectrum", "--positions", "0,2,3,9,14,20,21,30", "--n", "5", "--json"];
    assert_eq!(stdout(&spectrum), stdout(&[&spectrum[..], &["--threads", "2"]].concat()));
}

#[test]
fn exit_codes_and_single_line_errors() {
    let cases: [(&[&str], i32); 9] = [
        (&["lc", "--bits", "110"], 2),
        (&["lc", "--bits", "11x0"], 2),
        (&["lc", "--hex", "ff"], 2),
        (&["lc", "--bits", "1100", "--positions", "1"], 2),
        (&["lc", "--positions", "9", "--n", "3"], 3),
        (&["klc", "--bits", "11110000", "--k", "9"], 3),
        (&["census", "--n", "3", "--edges", "0,1", "--edges", "0,3"], 3),
        (&["spectrum", "--positions", "0,1,2,3,4,5,6,7,8,9", "--n", "5", "--budget-weight", "3"], 4),
        (&["kmin", "--bits", "0000"], 3),
    ];
    for (args, want) in cases {
        let (c, err) = code(args);
        assert_eq!(c, want, "{args:?}: {err}");
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("seqcube: "), "{err}");
    }
}

#[test]
fn errors_leave_stdout_empty() {
    let out = seqcube(&["lc", "--bits", "101", "--json"]);
    assert!(out.stdout.is_empty());
}
