//! End-to-end checks of the command-line interface: file formats, exit
//! codes, and the compose -> reconstruct -> compose round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::NamedTempFile;

fn pscomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pscomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn pscomp_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pscomp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn write_file(contents: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(contents.as_bytes()).unwrap();
    file
}

#[test]
fn compose_reconstruct_compose_round_trip() {
    let strings = write_file("011101\n");
    let composed = pscomp(&["compose", strings.path().to_str().unwrap()]);
    assert!(composed.status.success());
    let json = stdout(&composed);

    let reconstructed = pscomp_stdin(&["reconstruct", "-"], &json);
    assert!(reconstructed.status.success());
    assert_eq!(stdout(&reconstructed), "101110\n");

    let recomposed = pscomp_stdin(&["compose", "-"], &stdout(&reconstructed));
    assert_eq!(stdout(&recomposed), json, "round trip must be byte-identical");
}

#[test]
fn compose_rejects_mixed_lengths() {
    let strings = write_file("01\n011\n");
    let output = pscomp(&["compose", strings.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn text_format_round_trips() {
    let strings = write_file("1\n1\n");
    let composed = pscomp(&["compose", "--format", "text", strings.path().to_str().unwrap()]);
    assert!(composed.status.success());
    assert_eq!(stdout(&composed), "0 1\n0 1\n0 1\n0 1\n");

    let reconstructed = pscomp_stdin(&["reconstruct", "-"], &stdout(&composed));
    assert_eq!(stdout(&reconstructed), "1\n1\n");
}

#[test]
fn enumerate_lists_classes_in_order() {
    let strings = write_file("010101\n");
    let composed = pscomp(&["compose", strings.path().to_str().unwrap()]);
    let listed = pscomp_stdin(&["enumerate", "-"], &stdout(&composed));
    assert!(listed.status.success());
    assert_eq!(stdout(&listed), "class 1:\n010101\nclass 2:\n011001\n");

    let counted = pscomp_stdin(&["enumerate", "--count-only", "-"], &stdout(&composed));
    assert_eq!(stdout(&counted), "2\n");

    let parallel = pscomp_stdin(&["enumerate", "--jobs", "2", "-"], &stdout(&composed));
    assert_eq!(stdout(&parallel), stdout(&listed));
}

#[test]
fn check_unique_exit_codes() {
    let unique = write_file("011101\n");
    let composed = pscomp(&["compose", unique.path().to_str().unwrap()]);
    let verdict = pscomp_stdin(&["check-unique", "-"], &stdout(&composed));
    assert_eq!(verdict.status.code(), Some(0));
    assert!(stdout(&verdict).starts_with("unique"));

    let ambiguous = write_file("010101\n");
    let composed = pscomp(&["compose", ambiguous.path().to_str().unwrap()]);
    let verdict = pscomp_stdin(&["check-unique", "-"], &stdout(&composed));
    assert_eq!(verdict.status.code(), Some(3));
    let text = stdout(&verdict);
    assert!(text.starts_with("not unique"));
    assert!(text.contains("100110"));

    let invalid = pscomp_stdin(&["check-unique", "-"], "1 0\n1 0\n0 1\n0 1\n");
    assert_eq!(invalid.status.code(), Some(1));
}

#[test]
fn oracle_matches_enumerate_and_respects_budget() {
    let strings = write_file("0101\n0110\n");
    let composed = pscomp(&["compose", strings.path().to_str().unwrap()]);
    let enumerated = pscomp_stdin(&["enumerate", "-"], &stdout(&composed));
    let oracled = pscomp_stdin(&["oracle", "-"], &stdout(&composed));
    assert!(oracled.status.success());
    assert_eq!(stdout(&oracled), stdout(&enumerated));

    let over = pscomp_stdin(
        &["oracle", "--max-candidates", "3", "-"],
        &stdout(&composed),
    );
    assert_eq!(over.status.code(), Some(2));
}

#[test]
fn selftest_small_bounds_pass() {
    let output = pscomp(&["selftest", "--n-max", "4", "--h-max", "2"]);
    assert!(output.status.success(), "{}", stdout(&output));
    assert!(stdout(&output).contains("0 mismatches"));
}

#[test]
fn json_assertions_are_enforced() {
    let good = r#"{"pairs":[[0,1],[0,1]],"n":1,"h":1,"wbar":1}"#;
    assert!(pscomp_stdin(&["reconstruct", "-"], good).status.success());

    let bad = r#"{"pairs":[[0,1],[0,1]],"h":2}"#;
    assert_eq!(pscomp_stdin(&["reconstruct", "-"], bad).status.code(), Some(1));
}
