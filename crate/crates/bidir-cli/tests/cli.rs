//! End-to-end tests of the `bidir` binary: stdout contents and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bidir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bidir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

fn temp_file(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("bidir-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn encode_prints_the_wire_format() {
    let out = bidir(&["encode", "SKI"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "3 SKI\n");

    let out = bidir(&["encode", ""]);
    assert_eq!(stdout(&out), "0 \n");

    let out = bidir(&["encode", "héλ"]);
    assert_eq!(stdout(&out), "3 héλ\n");
}

#[test]
fn decode_prints_payload_then_remainder() {
    let out = bidir(&["decode", "6 lambda calculus"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "lambda\n calculus\n");

    let out = bidir(&["decode", "0 rest"]);
    assert_eq!(stdout(&out), "\nrest\n");
}

#[test]
fn decode_failure_exits_1() {
    let out = bidir(&["decode", "5 ab"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).is_empty());
}

#[test]
fn encode_then_decode_is_identity() {
    for payload in ["", "a", "with spaces", "λλλ", "12 34"] {
        let enc = stdout(&bidir(&["encode", payload]));
        let out = bidir(&["decode", enc.trim_end_matches('\n')]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout(&out), format!("{payload}\n\n"));
    }
}

#[test]
fn spine_get_and_put() {
    let t = "(N (N L 0 L) 1 (N L 2 L))";
    let out = bidir(&["spine-get", t]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1 2\n");

    let out = bidir(&["spine-put", t, "3", "4", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(N (N L 0 L) 3 (N L 4 (N L 5 L)))\n");

    let out = bidir(&["spine-get", "L"]);
    assert_eq!(stdout(&out), "\n");
}

#[test]
fn malformed_tree_exits_2() {
    assert_eq!(code(&bidir(&["spine-get", "(N L L)"])), 2);
    assert_eq!(code(&bidir(&["bst-check", "not-a-tree"])), 2);
}

#[test]
fn kv_put_then_get() {
    let file = temp_file("kv-roundtrip");
    let _ = std::fs::remove_file(&file);
    let path = file.to_str().unwrap();

    let out = bidir(&["kv-put", path, "--key", "a", "--key", "b", "--value", "1", "--value", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n2\n");
    assert_eq!(std::fs::read_to_string(&file).unwrap(), "a=1\nb=2\n");

    let out = bidir(&["kv-get", path, "b", "a"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "2\n1\n");

    let out = bidir(&["kv-get", path, "missing"]);
    assert_eq!(code(&out), 1);

    let out = bidir(&["kv-put", path, "--key", "a", "--key", "b", "--value", "1"]);
    assert_eq!(code(&out), 1);

    let _ = std::fs::remove_file(&file);
}

#[test]
fn bst_sample_is_deterministic_and_sound() {
    let args = ["bst-sample", "--lo", "0", "--hi", "20", "--count", "5", "--seed", "7"];
    let a = bidir(&args);
    let b = bidir(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    for line in stdout(&a).lines() {
        let out = bidir(&["bst-check", "--lo", "0", "--hi", "20", line]);
        assert_eq!(code(&out), 0, "sampled tree {line} is not a BST");
    }
}

#[test]
fn bst_sample_empty_range_yields_leaves() {
    let out = bidir(&["bst-sample", "--lo", "5", "--hi", "4", "--count", "3", "--seed", "1"]);
    assert_eq!(stdout(&out), "L\nL\nL\n");
}

#[test]
fn bst_check_reports_true_false_with_exit_codes() {
    let out = bidir(&["bst-check", "--lo", "0", "--hi", "20", "(N (N L 0 L) 1 (N L 2 L))"]);
    assert_eq!((code(&out), stdout(&out)), (0, "true\n".to_string()));

    let out = bidir(&["bst-check", "--lo", "0", "--hi", "20", "(N L 5 (N L 3 L))"]);
    assert_eq!((code(&out), stdout(&out)), (1, "false\n".to_string()));
}

#[test]
fn laws_pass_and_report_per_suite() {
    let out = bidir(&["laws", "--seed", "42", "--cases", "25"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() > 40);
    assert!(!text.contains("\nFAIL "));

    let out = bidir(&["laws", "--cases", "0"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn unknown_flags_are_rejected() {
    let out = bidir(&["encode", "--bogus", "x"]);
    assert_ne!(code(&out), 0);
}
