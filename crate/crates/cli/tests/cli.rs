use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn whittaker(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_whittaker"))
        .args(args)
        .env_remove("WHITTAKER_DEGREE")
        .output()
        .expect("binary runs")
}

fn config(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const STEINBERG: &str =
    r#"{"q": "symbolic", "segments": [{"kind": "unramified", "satake": "xi", "length": 2}]}"#;

const RAMIFIED_ONLY: &str = r#"{"q": "3", "segments": [
    {"kind": "ramified", "id": "rho", "degree": 2, "length": 1},
    {"kind": "ramified", "id": "sigma", "degree": 1, "length": 1}]}"#;

const MIXED: &str = r#"{"q": "3", "segments": [
    {"kind": "unramified", "satake": "1/2", "length": 1},
    {"kind": "unramified", "satake": "5", "length": 1},
    {"kind": "ramified", "id": "rho", "degree": 1, "length": 1}]}"#;

#[test]
fn schur_prints_polynomial() {
    let out = whittaker(&["schur", "--partition", "2,1", "--vars", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "x1^2*x2 + x1*x2^2\n");
    let out = whittaker(&["schur", "--partition", "2,1", "--vars", "2", "--algorithm", "bialternant"]);
    assert_eq!(stdout(&out), "x1^2*x2 + x1*x2^2\n");
}

#[test]
fn spherical_value() {
    let out = whittaker(&["spherical", "--satake", "z1,z2", "--weight", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "u^-1*z1 + u^-1*z2\n");
}

#[test]
fn cauchy_rank_one() {
    let out = whittaker(&["cauchy", "--n", "1", "--m", "1", "--degree", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("verdict: PASS\n"));
}

#[test]
fn verify_steinberg() {
    let f = config(STEINBERG);
    let path = f.path().to_str().unwrap();
    let out = whittaker(&["verify", "--rep", path, "--satake-prime", "w", "--degree", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lhs = 1 + w*xi*t + w^2*xi^2*t^2"));
    assert!(!text.contains("first mismatch"));
}

#[test]
fn essential_vanishes_without_unramified_part() {
    let f = config(RAMIFIED_ONLY);
    let out = whittaker(&["essential", "--rep", f.path().to_str().unwrap(), "--weight", "1,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn dropped_indicator_exits_one() {
    let f = config(MIXED);
    let path = f.path().to_str().unwrap();
    let args = ["verify", "--rep", path, "--satake-prime", "2/7,3/11", "--degree", "3"];
    assert_eq!(whittaker(&args).status.code(), Some(0));
    let mut dropped = args.to_vec();
    dropped.push("--drop-integrality-indicator");
    let out = whittaker(&dropped);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("first mismatch at t^0"));
}

#[test]
fn invalid_input_exits_two() {
    let linked = config(
        r#"{"q": "3", "segments": [
            {"kind": "unramified", "satake": "1", "length": 1},
            {"kind": "unramified", "satake": "3", "length": 1}]}"#,
    );
    let out = whittaker(&["lfactor", "--rep", linked.path().to_str().unwrap(), "--satake-prime", "w"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = whittaker(&["spherical", "--satake", "z1,0", "--weight", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = whittaker(&["verify", "--rep", "/nonexistent.json", "--satake-prime", "w"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn degree_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_whittaker"))
        .args(["cauchy", "--n", "2", "--m", "1"])
        .env("WHITTAKER_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("+ O(t^3)"));
    let out = whittaker(&["cauchy", "--n", "1", "--m", "1"]);
    assert!(stdout(&out).contains("+ O(t^9)"));
}

#[test]
fn lfactor_reads_pi_prime_from_config() {
    let f = config(
        r#"{"q": "symbolic", "pi_prime": ["w1", "w2"], "degree": 2,
            "segments": [{"kind": "unramified", "satake": "xi", "length": 2}]}"#,
    );
    let out = whittaker(&["lfactor", "--rep", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("roots: [w1*xi, w2*xi]\n"));
    assert!(text.contains("O(t^3)"));
}

#[test]
fn seeded_substitution_check_is_reproducible() {
    let f = config(STEINBERG);
    let path = f.path().to_str().unwrap();
    let args = ["verify", "--rep", path, "--satake-prime", "w1", "--degree", "4", "--seed", "17"];
    let a = whittaker(&args);
    let b = whittaker(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("substitution check (seed 17): PASS"));
}

#[test]
fn derivatives_list_subquotients() {
    let f = config(MIXED);
    let out = whittaker(&["derivatives", "--rep", f.path().to_str().unwrap(), "--order", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("(0,0,1): chi(1/2) x chi(5)\n"));
    assert!(text.contains("unramified part: (1/2, 5)\n"));
    let out = whittaker(&["derivatives", "--rep", f.path().to_str().unwrap(), "--order", "4"]);
    assert_eq!(out.status.code(), Some(2));
}
