//! End-to-end exit-code contract of the command-line pipeline, run against
//! the bundled corpus files.

use clap::Parser;
use koszul::cli::{run, Cli};
use koszul::KoszulError;
use std::path::PathBuf;

fn corpus(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Parse args, run against the named corpus file, return (exit code, text).
fn exec(args: &[&str], file: &str) -> (i32, String) {
    let mut argv = vec!["koszul"];
    argv.extend_from_slice(args);
    argv.push("ignored.alg");
    let cli = Cli::try_parse_from(argv).unwrap();
    let report = run(&cli.command, &corpus(file)).unwrap();
    (report.exit_code(), report.render_text())
}

const ALL: &[&str] = &[
    "classical_kxy.alg",
    "classical_kxyz.alg",
    "envalg_sl2.alg",
    "heisenberg.alg",
    "sl2_broken.alg",
    "broken_theta_a.alg",
    "sympl_refl_z2_gf2.alg",
    "sympl_refl_z2_q.alg",
];

#[test]
fn every_corpus_file_is_well_formed() {
    for f in ALL {
        let (code, text) = exec(&["check-algebra"], f);
        assert_eq!(code, 0, "{f}:\n{text}");
    }
}

#[test]
fn every_corpus_file_is_koszul() {
    for f in ALL {
        let (code, text) = exec(&["check-koszul", "--deg-max", "4"], f);
        assert_eq!(code, 0, "{f}:\n{text}");
    }
}

#[test]
fn mode_a_verdicts() {
    let (code, text) = exec(&["check-pbw-a", "--n-sat", "5"], "sympl_refl_z2_q.alg");
    assert_eq!(code, 0, "{text}");
    let (code, text) = exec(&["check-pbw-a"], "classical_kxy.alg");
    assert_eq!(code, 0, "{text}");
    let (code, text) = exec(&["check-pbw-a"], "sympl_refl_z2_gf2.alg");
    assert_eq!(code, 0, "{text}");
    let (code, text) = exec(&["check-pbw-a"], "broken_theta_a.alg");
    assert_eq!(code, 1, "{text}");
}

#[test]
fn mode_b_verdicts() {
    for (f, expected) in [
        ("envalg_sl2.alg", 0),
        ("heisenberg.alg", 0),
        ("sl2_broken.alg", 1),
    ] {
        let (code, text) = exec(&["check-pbw-b"], f);
        assert_eq!(code, expected, "{f}:\n{text}");
    }
}

#[test]
fn oracle_layers_for_symplectic_reflection() {
    let mut argv = vec!["koszul", "oracle", "--n-max", "4", "--n-sat", "5", "x.alg"];
    let cli = Cli::try_parse_from(argv.drain(..)).unwrap();
    let report = run(&cli.command, &corpus("sympl_refl_z2_q.alg")).unwrap();
    assert_eq!(report.exit_code(), 0);
    let layers = report
        .tables
        .iter()
        .find(|t| t.name == "filtered dimensions")
        .unwrap()
        .rows
        .iter()
        .find(|r| r.label.starts_with("layer"))
        .unwrap();
    assert_eq!(layers.values, vec![2, 4, 6, 8, 10]);
}

#[test]
fn braiding_and_gorenstein() {
    let (code, text) = exec(&["check-braiding"], "sympl_refl_z2_gf2.alg");
    assert_eq!(code, 0, "{text}");
    let (code, text) = exec(&["gorenstein", "--deg-max", "6"], "sympl_refl_z2_q.alg");
    assert_eq!(code, 0, "{text}");
}

#[test]
fn malformed_input_is_an_error() {
    let cli = Cli::try_parse_from(["koszul", "check-algebra", "x.alg"]).unwrap();
    match run(&cli.command, b"field Q\nalgebra dim 2\n") {
        Err(KoszulError::Parse(_)) => {}
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn missing_file_exits_3() {
    let code = koszul::cli::main_with_args(["koszul", "check-algebra", "/no/such/file.alg"]);
    assert_eq!(code, 3);
}
