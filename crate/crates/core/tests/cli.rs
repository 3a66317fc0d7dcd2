use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn rankcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankcalc"))
        .args(args)
        .current_dir(fixtures())
        .env_remove("RANKCALC_WORLD_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> Vec<u8> {
    std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("query_a.txt", &["query", "kappa1.json", "a"]),
    ("query_conjunction.txt", &["query", "kappa1.json", "X=1 and Y=1"]),
    (
        "revise.txt",
        &[
            "revise", "kappa1.json", "--on", "a", "--firmness", "2", "--jeffrey", "evidence_x.json", "--on", "Y=1",
            "--firmness", "0",
        ],
    ),
    ("independent.txt", &["independent", "kappa1.json", "--lhs", "X", "--rhs", "Y"]),
];

#[test]
fn golden_outputs_are_byte_identical() {
    for (file, args) in GOLDEN {
        let first = rankcalc(args);
        let second = rankcalc(args);
        assert_eq!(first.status.code(), Some(0), "{file}: {}", stderr(&first));
        assert_eq!(first.stdout, second.stdout, "{file} differs between runs");
        assert_eq!(first.stdout, golden(file), "{file} differs from the golden file:\n{}", stdout(&first));
    }
}

#[test]
fn query_reports_non_contingent_formulas() {
    let o = rankcalc(&["query", "kappa1.json", "X=1 or not X=1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rank 0, neg-rank TOP, believed true\n"), "{out}");
    assert!(out.contains("tautology"), "{out}");
    let o = rankcalc(&["query", "kappa1.json", "X=1 and X=0"]);
    assert!(stdout(&o).contains("rank TOP, neg-rank 0, believed false\n"));
}

#[test]
fn invalid_input_exits_with_one() {
    let o = rankcalc(&["query", "kappa1.json", "X=="]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: "), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());

    let o = rankcalc(&["query", "corrupt_min.json", "X=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("minimum rank is 1"), "{}", stderr(&o));

    assert_eq!(rankcalc(&["query", "missing.json", "X=1"]).status.code(), Some(1));
    assert_eq!(rankcalc(&["query", "kappa1.json", "Z=1"]).status.code(), Some(1));
    assert_eq!(rankcalc(&["independent", "kappa1.json", "--lhs", "X", "--rhs", "X"]).status.code(), Some(1));
    assert_eq!(rankcalc(&["verify", "--random", "5", "--vars", "9"]).status.code(), Some(1));
    assert_eq!(rankcalc(&["revise", "kappa1.json", "--on", "a"]).status.code(), Some(1));
}

#[test]
fn world_cap_is_enforced() {
    let o = Command::new(env!("CARGO_BIN_EXE_rankcalc"))
        .args(["query", "chain3.json", "X=1"])
        .current_dir(fixtures())
        .env("RANKCALC_WORLD_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn xor_is_dependent_with_a_witness() {
    let o = rankcalc(&["independent", "xor.json", "--lhs", "X", "--rhs", "Y"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\ndependent\n"), "{out}");
    assert!(out.contains("κ(B∩C) = 1, κ(B) + κ(C) = 0"), "{out}");
}

#[test]
fn conditional_independence_given_a_variable() {
    let given = stdout(&rankcalc(&["independent", "chain3.json", "--lhs", "X", "--rhs", "Y", "--given", "Z"]));
    assert!(given.starts_with("{X} vs {Y} given {Z}\nindependent\n"), "{given}");
    let plain = stdout(&rankcalc(&["independent", "chain3.json", "--lhs", "X", "--rhs", "Y"]));
    assert!(plain.contains("\ndependent\n"), "{plain}");
}

#[test]
fn zero_firmness_leaves_the_target_open() {
    let out = stdout(&rankcalc(&["revise", "kappa1.json", "--on", "b", "--firmness", "0"]));
    assert!(out.contains("= 0 (neither believed nor disbelieved)"), "{out}");
}

#[test]
fn empty_revision_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("same.json");
    let o = rankcalc(&["revise", "kappa1.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no revision steps; model unchanged\n"));
    let before = stdout(&rankcalc(&["query", "kappa1.json", "b"]));
    let after = stdout(&rankcalc(&["query", out.to_str().unwrap(), "b"]));
    assert_eq!(before, after);

    let revised = dir.path().join("revised.json");
    rankcalc(&["revise", "kappa1.json", "--on", "a", "--firmness", "3", "--out", revised.to_str().unwrap()]);
    let q = stdout(&rankcalc(&["query", revised.to_str().unwrap(), "a"]));
    assert!(q.contains("believed true, firmness 3"), "{q}");
    // Re-saving a revised model reproduces it byte for byte.
    let again = dir.path().join("again.json");
    rankcalc(&["revise", revised.to_str().unwrap(), "--out", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&revised).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn verify_a_model() {
    let o = rankcalc(&["verify", "kappa1.json"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.ends_with("total violations: 0\n"), "{out}");
    for title in ["== rank laws", "== revision", "== probability bridge", "== rival formalisms", "== closure contrast"] {
        assert!(out.contains(title), "{title} missing");
    }
}

#[test]
fn bridge_and_rivals_commands() {
    let o = rankcalc(&["bridge", "kappa1.json", "--coeffs", "1,2,1/3,5"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("(X=0, Y=1) 2z^2"), "{out}");
    assert_eq!(rankcalc(&["bridge", "kappa1.json", "--coeffs", "1,0,1,1"]).status.code(), Some(1));
    assert_eq!(rankcalc(&["bridge", "kappa1.json", "--coeffs", "1,1"]).status.code(), Some(1));

    let o = rankcalc(&["rivals", "kappa1.json"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("(X=1, Y=1) 3/4"), "{out}");
}
