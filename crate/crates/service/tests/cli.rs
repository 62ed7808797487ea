mod common;

use std::path::Path;

use axolotl_service::cli::{run, EXIT_ENVIRONMENT, EXIT_OK, EXIT_REJECTED};

fn axolotl(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("axolotl").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn lib(rel: &str) -> String {
    common::library_dir().join(rel).display().to_string()
}

fn fixture(name: &str) -> String {
    common::fixture(name).display().to_string()
}

#[test]
fn check_accepts_and_rejects() {
    let good = lib("sequent/transitivity.axolotl");
    let (code, out, _) = axolotl(&["check", &good]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, format!("{good}: ok (1 goals, 7 rules)\n"));

    let bad = fixture("duplicate_symbol.bad.axolotl");
    let (code, _, err) = axolotl(&["check", &good, &bad]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.starts_with(&format!("{bad}:3:")), "{err}");
    assert!(err.contains(": duplicate_symbol: "));

    let (code, _, _) = axolotl(&["check", "/nonexistent/x.axolotl", &bad]);
    assert_eq!(code, EXIT_ENVIRONMENT);
}

#[test]
fn lenient_check_downgrades_trailing_newline() {
    let path = fixture("trailing_line.bad.axolotl");
    let (code, _, err) = axolotl(&["check", &path]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains(":4:"), "{err}");
    let (code, out, err) = axolotl(&["check", "--lenient", &path]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(": ok ("));
    assert!(err.trim_end().ends_with("(warning)"), "{err}");
}

#[test]
fn prove_reports_completion() {
    let problem = lib("hilbert/p_implies_p.axolotl");
    let (code, out, _) = axolotl(&["prove", &problem, &lib("hilbert/p_implies_p.proof")]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "5 steps, complete\n"));

    let dir = tempfile::tempdir().unwrap();
    let full = std::fs::read_to_string(lib("hilbert/p_implies_p.proof")).unwrap();
    let partial = dir.path().join("partial.proof");
    let steps: Vec<&str> = full.lines().filter(|l| l.starts_with("step")).collect();
    std::fs::write(&partial, steps[..4].join("\n")).unwrap();
    let (code, out, _) = axolotl(&["prove", &problem, partial.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_REJECTED, "4 steps, complete=false, open=1\n"));

    let wrong = dir.path().join("wrong.proof");
    let mut lines = steps.clone();
    lines[1] = "step 0 2";
    std::fs::write(&wrong, lines.join("\n")).unwrap();
    let (code, _, err) = axolotl(&["prove", &problem, wrong.to_str().unwrap()]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.starts_with(&format!("{}:2: step 2: ", wrong.display())), "{err}");

    let (code, _, _) = axolotl(&["prove", &problem, "/nonexistent.proof"]);
    assert_eq!(code, EXIT_ENVIRONMENT);
}

#[test]
fn export_formats() {
    let problem = lib("sequent/transitivity.axolotl");
    let script = lib("sequent/transitivity.proof");
    let (code, out, _) = axolotl(&["export", &problem, "--script", &script]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, include_str!("../../core/tests/golden/transitivity.tex"));

    let (_, out, _) = axolotl(&["export", &problem, "--script", &script, "--format", "structured"]);
    let session = axolotl::export::from_structured(&out).unwrap();
    assert!(session.is_complete());

    let (_, out, _) = axolotl(&["export", &problem, "--format", "text"]);
    assert_eq!(out, "? (A imp B), (B imp C) ⊢ (A imp C)\n");

    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("proof.tex");
    let (code, out, _) = axolotl(&["export", &problem, "--script", &script, "--out", dest.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    assert!(std::fs::read_to_string(&dest).unwrap().contains("\\begin{prooftree}"));

    let (code, _, _) = axolotl(&["export", &problem, "--format", "pdf"]);
    assert_eq!(code, EXIT_ENVIRONMENT);
}

#[test]
fn wide_rules_cannot_be_typeset() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("wide.axolotl");
    std::fs::write(&problem, "Function A 0\nFunction B 0\nProblem 1 A\nRule 6 B B B B B B A [six]").unwrap();
    let script = dir.path().join("wide.proof");
    std::fs::write(&script, "step 0 0").unwrap();
    let (code, _, err) = axolotl(&["export", problem.to_str().unwrap(), "--script", script.to_str().unwrap()]);
    assert_eq!(code, EXIT_REJECTED);
    assert!(err.contains("six"), "{err}");
}

#[test]
fn serve_fails_when_address_is_taken() {
    let taken = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = taken.local_addr().unwrap().to_string();
    let (code, _, err) = axolotl(&["serve", "--listen", &addr]);
    assert_eq!(code, EXIT_ENVIRONMENT);
    assert!(err.contains("cannot listen"), "{err}");
    assert!(Path::new(&common::library_dir()).is_dir());
}

#[test]
fn usage_errors() {
    assert_eq!(axolotl(&["frobnicate"]).0, EXIT_ENVIRONMENT);
    assert_eq!(axolotl(&["--help"]).0, EXIT_OK);
}
