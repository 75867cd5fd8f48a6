//! End-to-end checks of the binary: output contracts and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expthresh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

#[test]
fn qc_reports_the_exact_point() {
    let out = run(&["qc", &fixture("shared-pair.family")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("= 1/2"), "{text}");
}

#[test]
fn analyze_reports_structure_and_thresholds() {
    let out = run(&[
        "analyze",
        &fixture("shared-pair.family"),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["ground_size"], 3);
    assert_eq!(report["generator_count"], 2);
    assert_eq!(report["largest_minimal"], 2);
    assert_eq!(report["q_c"]["lo"], "1/2");
    assert_eq!(report["q_c"]["hi"], "1/2");
}

#[test]
fn clone_output_feeds_back_in_as_a_family() {
    let out = run(&["clone", "-k", "2", &fixture("single-pair.family")]);
    assert_eq!(out.status.code(), Some(0));
    let cloned = expthresh::format::parse_family(&stdout(&out)).expect("clone output reparses");
    assert_eq!(cloned.n(), 4);
    assert_eq!(cloned.generators().len(), 4);
}

#[test]
fn verify_bounds_hold_on_the_fixture_corpus() {
    let out = run(&["verify-bounds", &fixtures().display().to_string()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("HOLDS"));
    assert!(!text.contains("VIOLATED"), "{text}");
}

#[test]
fn verify_scaling_is_consistent() {
    let out = run(&["verify-scaling", "-k", "2", &fixture("shared-pair.family")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("consistent: yes"));
}

#[test]
fn noncloned_finds_the_reference_witness() {
    let out = run(&[
        "noncloned",
        "-k",
        "2",
        "-q",
        "1/4",
        &fixture("shared-pair.family"),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["min_cost"], "1/2");
    assert!(report["witness"].is_object(), "{report}");
    assert_eq!(report["truncated"], false);
}

#[test]
fn structured_batch_output_is_byte_identical() {
    let dir = fixtures().display().to_string();
    let first = run(&["analyze", &dir, "--format", "structured"]);
    let second = run(&["analyze", &dir, "--format", "structured"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    // Batch reports appear in filename order.
    let text = stdout(&first);
    let order: Vec<usize> = ["path", "shared-pair", "single-pair", "singleton", "triangle"]
        .iter()
        .map(|name| text.find(name).unwrap_or_else(|| panic!("{name} missing")))
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{order:?}");
}

#[test]
fn falsify_symmetry_reports_honestly() {
    let out = run(&[
        "falsify-symmetry",
        &fixture("rotation.group"),
        "--trials",
        "5",
        "--seed",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("group of order 3"));
}

#[test]
fn malformed_family_exits_two_with_context() {
    let dir = std::env::temp_dir().join("expthresh-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.family");
    std::fs::write(&path, "{\"ground\": [\"a\"]}").unwrap();
    let out = run(&["pc", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("broken.family"), "{err}");
    assert!(err.contains("generators"), "{err}");
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["pc", "/nonexistent/nowhere.family"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_range_rate_exits_two() {
    let out = run(&["min-cover", "-q", "3/2", &fixture("singleton.family")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_three() {
    let out = run(&["clone", "-k", "64", &fixture("path.family")]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}
