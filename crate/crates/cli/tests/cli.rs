//! End-to-end checks of the binary: output shapes and the exit-code contract
//! (0 success, 1 verification mismatch, 2 invalid input, 3 budget exceeded).

use std::process::{Command, Output};

fn dscodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dscodes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_reports_the_four_weight_ternary_code() {
    let out = dscodes(&["analyze", "--p", "3", "--m", "3", "--gens", "1,1,0", "--method", "auto"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("n = 1242, k = 6, size = 729, d = 810"), "{text}");
    assert!(text.contains("enumerator: 1+6z^810+702z^828+18z^864+2z^972"));
    assert!(text.contains("dual distance class: 2"));
}

#[test]
fn analyze_json_has_the_schema_keys() {
    let out = dscodes(&[
        "analyze", "--p", "3", "--m", "3", "--gens", "1,0,0", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    for key in [
        "p", "m", "generators", "variant", "length_ring", "n", "k", "size", "d",
        "distribution", "dual_distance_class", "griesmer_sum_d", "griesmer_sum_d_plus_1",
        "meets_griesmer", "distance_optimal", "diagnostics",
    ] {
        assert!(doc.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(doc["n"], 1350);
    assert_eq!(doc["d"], 900);
    assert_eq!(doc["meets_griesmer"], true);
    assert_eq!(doc["distance_optimal"], "PROVEN");
    assert_eq!(doc["dual_distance_class"], "2");
}

#[test]
fn analyze_writes_to_a_file_and_json_round_trips_byte_identically() {
    let dir = std::env::temp_dir().join("dscodes-test-out");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let _ = std::fs::remove_file(&path);
    let out = dscodes(&[
        "analyze", "--p", "3", "--m", "2", "--gens", "1,0", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let body = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["length_ring"], 63);

    // parse into the typed report and re-serialize: byte-identical
    let report: downset_codes::CodeReport = serde_json::from_str(&body).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, body);
}

#[test]
fn analyze_rejects_bad_input_with_exit_two() {
    // not a prime
    let out = dscodes(&["analyze", "--p", "4", "--m", "2", "--gens", "1,0"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    // malformed generators
    let out = dscodes(&["analyze", "--p", "3", "--m", "2", "--gens", "x,y"]);
    assert_eq!(out.status.code(), Some(2));
    // coordinate out of range
    let out = dscodes(&["analyze", "--p", "3", "--m", "2", "--gens", "3,0"]);
    assert_eq!(out.status.code(), Some(2));
    // analytic formulas need an odd prime
    let out = dscodes(&["analyze", "--p", "2", "--m", "2", "--gens", "1,0", "--method", "analytic"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("odd prime"));
    // no closed form for a multi-generator down set
    let out = dscodes(&["analyze", "--p", "3", "--m", "2", "--gens", "1,0;0,1", "--method", "table"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_refuses_over_budget_with_exit_three() {
    let out = dscodes(&["analyze", "--p", "3", "--m", "2", "--gens", "1,0", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("budget exceeded"), "{err}");
    assert!(err.contains("10"), "refusal names the budget: {err}");
}

#[test]
fn verify_family_sweep_passes() {
    let out = dscodes(&["verify", "--family", "1", "--p", "3", "--m", "2", "--r", "1..2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("family=1 p=3 m=2 r=1: PASS"));
    assert!(text.contains("family=1 p=3 m=2 r=2: PASS"));
    assert!(text.contains("2 passed, 0 failed"));
}

#[test]
fn verify_family_four_pentary_sweep_passes_with_abstention() {
    let out = dscodes(&["verify", "--family", "4", "--p", "5", "--m", "3", "--r", "1..3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("family=4 p=5 m=3 r=1: PASS"));
    assert!(text.contains("closed form abstained"), "{text}");
    assert!(text.contains("family=4 p=5 m=3 r=2: PASS"));
    assert!(text.contains("family=4 p=5 m=3 r=3: PASS"));
    assert!(text.contains("3 passed, 0 failed"));
}

#[test]
fn verify_reports_closed_form_drift_with_exit_one() {
    // family 4 at r < (p-1)/2: the tabulated frequencies stay nonnegative but
    // no longer match the exact distribution.
    let out = dscodes(&["verify", "--family", "4", "--p", "7", "--m", "3", "--r", "2"]);
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("family=4 p=7 m=3 r=2: FAIL"));
    assert!(text.contains("closed-form table != analytic"));
    assert!(text.contains("z^192080"), "full distributions are reported: {text}");
    assert!(text.contains("0 passed, 1 failed"));
}

#[test]
fn verify_rejects_family_four_for_p_three() {
    let out = dscodes(&["verify", "--family", "4", "--p", "3", "--m", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("does not admit"));
}

#[test]
fn verify_refuses_oracle_over_budget() {
    // a pass-candidate must run the brute-force oracle; p=7, m=3 exceeds the
    // default budget
    let out = dscodes(&["verify", "--family", "2", "--p", "7", "--m", "3", "--r", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn verify_random_sweep_is_seeded_and_passes() {
    let out = dscodes(&[
        "verify", "--random", "5", "--p", "3", "--m", "2", "--seed", "42",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("5 passed, 0 failed"));
    // deterministic in the seed
    let again = dscodes(&[
        "verify", "--random", "5", "--p", "3", "--m", "2", "--seed", "42",
    ]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn table5_csv_matches_the_known_p3_blocks() {
    let out = dscodes(&["table5", "--p", "3", "--m", "3,4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,n,k,d,label,flag");
    assert_eq!(lines[1], "3,1350,6,900,Optimal*,");
    assert_eq!(lines[2], "3,1296,6,864,Distance optimal,");
    assert_eq!(lines[3], "3,1134,6,756,Optimal*,");
    assert_eq!(lines[4], "3,972,6,648,Distance optimal,");
    assert_eq!(lines[5], "3,12798,8,8532,Optimal*,");
    assert!(lines[6].starts_with("3,12636,8,8424,Distance optimal,"));
    assert!(lines[6].contains("published d=8428"));
    assert_eq!(lines[7], "3,12150,8,8100,Optimal*,");
    assert_eq!(lines[8], "3,11664,8,7776,Distance optimal,");
    assert_eq!(lines.len(), 9);
}

#[test]
fn table5_flags_the_p7_misprints() {
    let out = dscodes(&["table5", "--p", "7", "--m", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let flagged: Vec<&str> = text.lines().filter(|l| l.contains("published")).collect();
    assert_eq!(flagged.len(), 1, "{text}");
    assert!(flagged[0].starts_with("7,11395146,8,9767268,Optimal*,"));
    assert!(flagged[0].contains("published n=11595146 != computed n=11395146"));

    let out = dscodes(&["table5", "--p", "7", "--m", "3", "--format", "csv"]);
    let text = stdout(&out);
    let flagged: Vec<&str> = text.lines().filter(|l| l.contains("published")).collect();
    assert_eq!(flagged.len(), 1, "{text}");
    assert!(flagged[0].starts_with("7,201684,6,172872,Distance optimal,"));
}

#[test]
fn table5_pentary_block_has_two_griesmer_stars() {
    let out = dscodes(&["table5", "--p", "5", "--m", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].starts_with("5,30750,6,24600"));
    assert!(rows[1].starts_with("5,30500,6,24400,Optimal*"));
    let stars = rows.iter().filter(|r| r.contains("Optimal*")).count();
    assert_eq!(stars, 2);
}

#[test]
fn table5_rejects_even_primes_and_small_m() {
    let out = dscodes(&["table5", "--p", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = dscodes(&["table5", "--p", "3", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
