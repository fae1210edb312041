//! End-to-end checks of the `soplab` binary: exit codes, config-file
//! layering, and byte-determinism of the json-lines output.

use std::io::Write;
use std::process::{Command, Output};

fn soplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_soplab"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn passing_suite_exits_zero_with_json_lines() {
    let out = soplab(&["groups", "chain-check"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("\"claim\":\"groups.bs12_chain\""));
    assert!(text.contains("\"status\":\"pass\""));
}

#[test]
fn json_lines_output_is_byte_deterministic() {
    let a = soplab(&["verify", "amalgam", "--provider", "simple", "--j", "2"]);
    let b = soplab(&["verify", "amalgam", "--provider", "simple", "--j", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn seeded_suite_is_deterministic_for_a_fixed_seed() {
    let args = [
        "verify", "sop-type", "--n", "3", "--m", "3", "--trials", "50", "--samples", "50",
        "--seed", "41",
    ];
    let a = soplab(&args);
    let b = soplab(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn missing_seed_is_a_usage_error() {
    let out = soplab(&["verify", "sop-type"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let out = soplab(&["groups", "enumerate", "--preset", "nonexistent"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_flag_is_a_clap_error() {
    let out = soplab(&["verify", "banach", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = std::env::temp_dir();
    let path = dir.join("soplab_cli_test.cfg");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# amalgam suite defaults").unwrap();
    writeln!(f, "provider = simple").unwrap();
    writeln!(f, "j = 2").unwrap();
    drop(f);
    let cfg = path.to_str().unwrap();

    let from_config = soplab(&["verify", "amalgam", "--config", cfg]);
    assert_eq!(from_config.status.code(), Some(0));
    let text = String::from_utf8(from_config.stdout).unwrap();
    assert!(text.contains("\"provider\":\"simple\""));
    assert!(text.contains("\"j\":\"2\""));

    let overridden = soplab(&["verify", "amalgam", "--config", cfg, "--j", "3"]);
    let text = String::from_utf8(overridden.stdout).unwrap();
    assert!(text.contains("\"j\":\"3\""));
    std::fs::remove_file(&path).ok();
}

#[test]
fn out_flag_writes_the_report_file() {
    let path = std::env::temp_dir().join("soplab_cli_out.jsonl");
    let out = soplab(&["groups", "chain-check", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("groups.bs12_chain"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn summary_format_counts_match() {
    let out = soplab(&["verify", "banach", "--format", "summary-text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim_end().ends_with("4 checks: 4 pass, 0 fail, 0 inconclusive"));
}
