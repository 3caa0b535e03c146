//! End-to-end tests of the command-line interface and its exit codes.

use std::process::{Command, Output};

fn snarklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snarklab"))
        .args(args)
        .env_remove("SNARKLAB_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_petersen_is_a_snark_exit_0() {
    let out = snarklab(&["check", "--fixture", "P10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("girth: 5"));
    assert!(text.contains("snark: true"));
}

#[test]
fn check_k4_is_not_a_snark_exit_1() {
    let dir = std::env::temp_dir().join("snarklab_cli_k4");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.g6");
    std::fs::write(&path, "C~\n").unwrap();
    let out = snarklab(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("girth: 3"));
    assert!(text.contains("3-edge-colorable: true"));
}

#[test]
fn check_malformed_input_exit_2() {
    let dir = std::env::temp_dir().join("snarklab_cli_bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.g6");
    std::fs::write(&path, "this is not graph6 \x07\n").unwrap();
    let out = snarklab(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_cap_exceeded_exit_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_snarklab"))
        .args(["check", "--fixture", "P10"])
        .env("SNARKLAB_MAX_VERTICES", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let flag = snarklab(&["check", "--fixture", "P10", "--max-vertices", "8"]);
    assert_eq!(flag.status.code(), Some(3));
}

#[test]
fn hist_x1_reports_no_hist_exit_1() {
    let out = snarklab(&["hist", "--fixture", "X1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no Hist (exhaustive)"));
}

#[test]
fn hist_petersen_has_profile_six() {
    let out = snarklab(&["hist", "--fixture", "P10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("profile {6}"));
}

#[test]
fn hist_all_on_blanusa_shows_both_profiles() {
    let out = snarklab(&["hist", "--fixture", "B18", "--all", "--limit", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("profile {10}"));
    assert!(text.contains("profile {5,5}"));
}

#[test]
fn oc_prints_declared_cycles() {
    let out = snarklab(&["oc", "--fixture", "T(5,5)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("cycle 1:"));
    assert!(text.contains("cycle 2:"));
    assert!(text.contains("profile: {5,5}"));
}

#[test]
fn realize_9_names_the_singleton_rule_exit_1() {
    let out = snarklab(&["realize", "9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("singleton"));
}

#[test]
fn realize_6_6_emits_a_22_vertex_snark() {
    let out = snarklab(&["realize", "6,6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("certified: snark"));
    assert!(text.contains("n: 22"));
    assert!(text.contains("profile: {6,6}"));
}

#[test]
fn realize_output_is_byte_identical_across_runs() {
    let a = snarklab(&["realize", "5,6,7", "--plan"]);
    let b = snarklab(&["realize", "5,6,7", "--plan"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fixtures_emit_t888_dot_has_24_dashed_edges() {
    let out = snarklab(&["fixtures", "emit", "T888", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("dashed").count(), 24);
}

#[test]
fn fixtures_list_names_all_entries() {
    let out = snarklab(&["fixtures", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for name in ["P10", "B18", "L22", "T(8,8,8)", "X1", "X2"] {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn construct_reduce_ii_on_petersen() {
    let out = snarklab(&["construct", "reduce-ii", "--g", "P10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("profile: {5,6}"));
    assert!(text.contains("provenance:"));
}

#[test]
fn construct_merge_makes_eleven() {
    let out = snarklab(&[
        "construct",
        "merge",
        "--g",
        "P10",
        "--h",
        "P10",
        "--k",
        "6",
        "--l",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n: 20"));
    assert!(text.contains("profile: {11}"));
}

#[test]
fn construct_dot_of_two_petersens() {
    let out = snarklab(&["construct", "dot", "--g", "P10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("n: 18"));
}

#[test]
fn cdc_finds_a_cover_on_petersen() {
    let out = snarklab(&["cdc", "--fixture", "P10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cover size:"));
}

#[test]
fn scan_reports_per_graph_and_summary() {
    let dir = std::env::temp_dir().join("snarklab_cli_scan");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two.g6");
    // K4 and the Petersen graph.
    std::fs::write(&path, "C~\nIheA@GUAo\n").unwrap();
    let out = snarklab(&["scan", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with('{')).count(), 2);
    assert!(text.contains("\"is_snark\":false"));
    assert!(text.contains("\"is_snark\":true"));
    assert!(text.contains("snarks              1"));
}

#[test]
fn adjacency_text_files_are_auto_detected() {
    let dir = std::env::temp_dir().join("snarklab_cli_adjacency");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.txt");
    std::fs::write(&path, "0(1,2,3)1(2,3)2(3)").unwrap();
    let out = snarklab(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("n: 4"));
}
