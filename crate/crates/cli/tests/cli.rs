use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tambara")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn norm_of_two_free_points() {
    let (code, out, _) = run(&["tam", "nm", "--functor", "omega", "--group", "c2", "--map", "pGe", "--elem", "2*[G/e]"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2*[G/G] + 1*[G/e]");
}

#[test]
fn two_omega_is_rejected_at_the_shriek_condition() {
    let (code, out, _) = run(&["ideal", "check", "--file", &data("two-omega.idl")]);
    assert_eq!(code, 1);
    assert!(out.contains("condition (i) holds"), "{out}");
    assert!(out.contains("condition (ii) holds"), "{out}");
    assert!(
        out.contains("condition (iii) FAILS: along pGe: f_!(2*[G/e]) = 2*[G/G] + 1*[G/e] is not in I(G/G)"),
        "{out}"
    );
}

#[test]
fn mrc_quotient_of_omega_over_s3() {
    let (code, out, _) = run(&["demo", "mrc", "--group", "s3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("kernel equals I_(0): true"));
    assert!(out.contains("isomorphism: true"));
    for class in ["G/e", "G/H1", "G/H2", "G/G"] {
        assert!(out.contains(&format!("{class}: kernel")), "{out}");
    }
}

#[test]
fn demos_succeed() {
    for demo in ["paper-norm", "crt", "spec-inclusion"] {
        let (code, out, err) = run(&["demo", demo]);
        assert_eq!(code, 0, "{demo}: {out}{err}");
    }
    let (code, out, _) = run(&["demo", "omega-domain", "--group", "c3", "--count", "10"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("10/10"), "{out}");
}

#[test]
fn dependent_product_matches_the_norm() {
    let (code, out, _) = run(&["gset", "pi", "--group", "c2", "--file", &data("c2-sets.gs"), "--f", "X->Y", "--p", "A->X"]);
    assert_eq!(code, 0);
    assert!(out.contains("orbits: 2*[G/G] + 1*[G/e]"), "{out}");
}

#[test]
fn axioms_pass_for_swap_field() {
    let (code, out, _) = run(&["tam", "axioms", "--functor", "prodfield:2:2:perm", "--group", "c2"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));
}

#[test]
fn spectrum_of_z6_has_two_maximal_primes() {
    let (code, out, _) = run(&["spec", "compute", "--functor", "zmod:6", "--group", "c2"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches("(maximal)").count(), 2, "{out}");
    assert!(out.contains("flag connected = false"));
}

#[test]
fn generated_ideal_replays() {
    let (code, out, _) = run(&["ideal", "gen", "--functor", "omega", "--group", "c2", "--gen", "e: 2", "--trace"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("replay reproduces the ideal: true"));
    assert!(out.contains("shriek[pGe](gen0)"));
}

#[test]
fn membership_reports_a_derivation() {
    let (code, out, _) = run(&["ideal", "member", "--functor", "zmod:6", "--group", "c2", "--gen", "e: 2", "--elem", "G: 4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("in\n"), "{out}");
    assert!(out.contains("derivation:"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["group", "info", "--group", "q8"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown group"));
    let (code, _, _) = run(&["tam", "nm", "--functor", "omega", "--group", "c2", "--map", "pGe", "--elem", "3", "--cap-points", "3"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["tam", "nm", "--functor", "nope", "--group", "c2", "--map", "pGe", "--elem", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}
