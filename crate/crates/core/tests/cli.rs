use std::path::PathBuf;
use std::process::Command;

use matsos::cli::{run, EXIT_INPUT, EXIT_OK, EXIT_REFUTED, EXIT_SCALAR_UNAVAILABLE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn matsos(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("matsos").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    let input = fixture("example2.txt");
    let (code, out, _) = matsos(&["certify", "--input", &input, "--output", cert]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("d = 3\nsquare_count = "), "{out}");
    let (code, out, _) = matsos(&["verify", "--input", &input, "--cert", cert]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("verified: "), "{out}");

    let text = std::fs::read_to_string(cert).unwrap();
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, text.replacen("\"num\": \"", "\"num\": \"1 + ", 1)).unwrap();
    assert_eq!(matsos(&["verify", "--input", &input, "--cert", tampered.to_str().unwrap()]).0, EXIT_REFUTED);

    let wrong = matsos(&["verify", "--input", &fixture("identity3.txt"), "--cert", cert]);
    assert_eq!(wrong.0, EXIT_INPUT);
}

#[test]
fn example1_with_and_without_store() {
    let input = fixture("example1.txt");
    let (code, _, err) = matsos(&["certify", "--input", &input]);
    assert_eq!(code, EXIT_SCALAR_UNAVAILABLE);
    assert!(err.contains("a0"), "{err}");
    let (code, out, _) = matsos(&["certify", "--input", &input, "--store", &fixture("example1_store.txt")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("a0=denominator-lift"), "{out}");
}

#[test]
fn small_commands() {
    let (code, out, _) = matsos(&["minors", "--input", &fixture("identity3.txt")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 7);
    assert!(out.lines().all(|l| l.ends_with(" = 1")));

    let (code, _, err) = matsos(&["check-psd", "--input", &fixture("x1.txt")]);
    assert_eq!(code, EXIT_REFUTED);
    assert!(err.contains("not PSD: principal minor {1}"), "{err}");
    assert_eq!(matsos(&["certify", "--input", &fixture("x1.txt")]).0, EXIT_REFUTED);
    assert_eq!(matsos(&["check-psd", "--input", &fixture("example2.txt")]).0, EXIT_OK);

    assert_eq!(matsos(&["certify", "--input", &fixture("malformed.txt")]).0, EXIT_INPUT);
    assert_eq!(matsos(&["minpoly", "--input", &fixture("missing.txt")]).0, EXIT_INPUT);
}

#[test]
fn runs_with_the_same_output_for_the_same_seed() {
    let input = fixture("x1.txt");
    let args = ["check-psd", "--input", &input, "--seed", "5", "--samples", "20"];
    assert_eq!(matsos(&args), matsos(&args));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_matsos");
    let out = Command::new(bin).args(["four-squares", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "7 = 2^2 + 1^2 + 1^2 + 1^2\n");
    let out = Command::new(bin).args(["minpoly", "--input", &fixture("malformed.txt")]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
