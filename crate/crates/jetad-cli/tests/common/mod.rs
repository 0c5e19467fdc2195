//! Helpers shared by the CLI contract tests and the acceptance suite.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

/// Runs the built binary with the given arguments.
pub fn run_jetad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetad"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

/// Scale-protected relative deviation.
pub fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0f64.max(a.abs()).max(b.abs())
}

/// Compares output against a golden file token by token: numeric tokens
/// within 1e-12 relative (formatting noise and last-ulp float differences
/// across math libraries), everything else byte-exact.
pub fn assert_matches_golden(actual: &str, golden_name: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(golden_name);
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("golden file {}: {e}", path.display()));
    let actual_lines: Vec<&str> = actual.lines().collect();
    let expected_lines: Vec<&str> = expected.lines().collect();
    assert_eq!(
        actual_lines.len(),
        expected_lines.len(),
        "{golden_name}: line count {} vs {}\n--- actual ---\n{actual}",
        actual_lines.len(),
        expected_lines.len()
    );
    for (lineno, (a_line, e_line)) in actual_lines.iter().zip(&expected_lines).enumerate() {
        let a_tokens = tokens(a_line);
        let e_tokens = tokens(e_line);
        assert_eq!(
            a_tokens.len(),
            e_tokens.len(),
            "{golden_name}:{}: token count differs\n  actual:   {a_line}\n  expected: {e_line}",
            lineno + 1
        );
        for (a, e) in a_tokens.iter().zip(&e_tokens) {
            match (a.parse::<f64>(), e.parse::<f64>()) {
                (Ok(x), Ok(y)) => assert!(
                    rel_dev(x, y) <= 1e-12,
                    "{golden_name}:{}: {x} vs {y}\n  actual:   {a_line}\n  expected: {e_line}",
                    lineno + 1
                ),
                _ => assert_eq!(
                    a,
                    e,
                    "{golden_name}:{}: token `{a}` vs `{e}`\n  actual:   {a_line}\n  expected: {e_line}",
                    lineno + 1
                ),
            }
        }
    }
}

fn tokens(line: &str) -> Vec<String> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.to_string())
        .collect()
}
