use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.alg"))
        .display()
        .to_string()
}

fn dqhopf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqhopf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn passing_instance_exits_zero() {
    let o = dqhopf(&["check", &fixture("kw2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.ends_with("PASS")));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let o = dqhopf(&["check", &fixture("noncocycle")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("e3 FAIL at (g,g,e,e)"), "{}", stdout(&o));
}

#[test]
fn coalgebra_level_ignores_broken_reassociator() {
    let o = dqhopf(&["check", &fixture("noncocycle"), "--level", "coalgebra"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "field Q\ndim 2\nbasis a\n").unwrap();
    let o = dqhopf(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());

    let o = dqhopf(&["check", "/nonexistent.alg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integrals_and_grouplike_of_h4() {
    let o = dqhopf(&["integrals", &fixture("h4")]);
    assert_eq!(stdout(&o), "left: gx\nright: x\n");
    let o = dqhopf(&["grouplike", &fixture("h4")]);
    assert_eq!(stdout(&o), "a = g\n");
    let o = dqhopf(&["antipode", &fixture("h4")]);
    assert_eq!(stdout(&o), "injective: true\nsurjective: true\norder: 4\n");
}

#[test]
fn prerequisites_gate_derived_commands() {
    let o = dqhopf(&["grouplike", &fixture("h4_bad_comult")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("coassoc FAIL"));
}

#[test]
fn theorem_report_lists_nine_stages() {
    let o = dqhopf(&["verify-theorem", &fixture("kw3_f7")]);
    assert_eq!(o.status.code(), Some(0));
    let stages: Vec<_> = stdout(&o).lines().filter(|l| l.starts_with("stage ")).map(String::from).collect();
    assert_eq!(stages.len(), 9);
    assert!(stages.iter().all(|l| l.ends_with("PASS")));
}

#[test]
fn eval_with_bindings() {
    let dir = tempfile::tempdir().unwrap();
    let bind = dir.path().join("b.txt");
    // u = eps on K[Z/2]
    std::fs::write(&bind, "# counit again\nu/1 1 1\n").unwrap();
    let kz2 = fixture("kz2");
    let b = bind.to_str().unwrap();
    let o = dqhopf(&["eval", &kz2, "--identity", "u(h1) = eps(h1)", "--bind", b]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    assert_eq!(stdout(&o), "identity PASS\n");

    let o = dqhopf(&["eval", &kz2, "--identity", "u(h1) = eps(h2)", "--bind", b]);
    assert_eq!(o.status.code(), Some(2));

    let o = dqhopf(&["eval", &kz2, "--identity", "v(h1) = eps(h1)"]);
    assert_eq!(o.status.code(), Some(2));

    let o = dqhopf(&["eval", &kz2, "--identity", "(h1 g1) = (g1 h1)"]);
    assert_eq!(o.status.code(), Some(0));
    let o = dqhopf(&["eval", &fixture("h4"), "--identity", "(h1 g1) = (g1 h1)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tiny_ceiling_skips_instead_of_running() {
    let o = dqhopf(&["--ceiling", "1", "eval", &fixture("h4"), "--identity", "eps(h2) alpha(h1) = alpha(h1)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("SKIPPED"));
}

#[test]
fn example_writes_fixture_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kw3.alg");
    let o = dqhopf(&["example", "twist", "--n", "3", "--zeta", "2", "--field", "Fp", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(fixture("kw3_f7")).unwrap());
}

#[test]
fn example_rejects_bad_parameters() {
    assert_eq!(dqhopf(&["example", "h4", "--field", "Fp", "2"]).status.code(), Some(2));
    assert_eq!(dqhopf(&["example", "twist", "--n", "3", "--zeta", "2"]).status.code(), Some(2));
    assert_eq!(dqhopf(&["example", "twist", "--n", "3"]).status.code(), Some(2));
    assert_eq!(dqhopf(&["example", "nonsense"]).status.code(), Some(2));
    assert_eq!(dqhopf(&["example", "group", "--field", "Fp", "8"]).status.code(), Some(2));
}
