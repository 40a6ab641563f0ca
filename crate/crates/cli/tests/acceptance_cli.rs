//! CLI acceptance tests: byte-identical output across worker counts
//! (criterion 12), the documented exit codes, and the worked examples.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clique-operads"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

#[test]
fn criterion_12_determinism_across_worker_counts() {
    let args = ["verify", "all", "--magma", "D0", "--max", "3"];
    let first = bin().args(args).args(["--workers", "1"]).output().unwrap();
    let second = bin().args(args).args(["--workers", "4"]).output().unwrap();
    assert!(first.status.success(), "{}", stdout(&first));
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout, "outputs differ across worker counts");
    assert_eq!(stdout(&first), stdout(&second));
    println!("[PASS] criterion 12: verify all is byte-identical across worker counts and exits 0");
}

#[test]
fn verify_all_over_unit_divisor_magma() {
    // Families needing no unit divisors are skipped with the reason; the
    // remaining suites all pass.
    let out = run(&["verify", "all", "--magma", "N2", "--max", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("skipped ideal-Acy"));
    assert!(text.contains("unit divisors"));
    assert!(text.contains("check ideal-NC: pass"));
}

#[test]
fn worker_env_variable_respected() {
    let args = ["verify", "axioms", "--magma", "D0", "--max", "2"];
    let plain = bin().args(args).output().unwrap();
    let with_env = bin()
        .args(args)
        .env("CLIQUE_OPERADS_WORKERS", "3")
        .output()
        .unwrap();
    assert!(plain.status.success());
    assert!(with_env.status.success());
    assert_eq!(plain.stdout, with_env.stdout);
}

#[test]
fn verify_all_reports_every_suite() {
    let out = run(&["verify", "all", "--magma", "D0", "--max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for check in [
        "operad-axioms",
        "ideal-NC",
        "cyclic-structure",
        "basic-criterion",
        "presentation",
        "koszul-duality",
        "reconstruction",
        "dual-tree-bijection",
    ] {
        assert!(text.contains(check), "missing {check} in:\n{text}");
    }
    assert!(text.contains("# conventions:"));
    assert!(text.contains("cyclic law"));
}

#[test]
fn dims_motzkin_example() {
    let out = run(&["dims", "--family", "Mot", "--magma", "D0", "--max", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2,4,4,true"));
    assert!(text.contains("5,51,51,true"));
    assert!(text.trim_end().ends_with("match: true"));
}

#[test]
fn hilbert_examples() {
    let out = run(&["hilbert", "--m", "2", "--terms", "5", "--dual"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 8 80 992 13760\n");
    let out = run(&["hilbert", "--m", "2", "--terms", "5"]);
    assert_eq!(stdout(&out), "1 8 48 352 2880\n");
}

#[test]
fn compose_unit_law_via_files() {
    let dir = std::env::temp_dir().join("clique-operads-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let unit = dir.join("unit.json");
    let p = dir.join("p.json");
    std::fs::write(&unit, r#"{"magma":"Z","size":1,"labels":[]}"#).unwrap();
    let p_json = r#"{"magma":"Z","size":3,"labels":[[1,3,"4"],[2,3,"-1"]]}"#;
    std::fs::write(&p, p_json).unwrap();
    let out = run(&[
        "compose",
        "--magma",
        "Z",
        "--lhs",
        unit.to_str().unwrap(),
        "--rhs",
        p.to_str().unwrap(),
        "--pos",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim_end(), p_json);
}

#[test]
fn tree_round_trip_via_files() {
    let dir = std::env::temp_dir().join("clique-operads-cli-tree");
    std::fs::create_dir_all(&dir).unwrap();
    let clique = dir.join("clique.json");
    let tree = dir.join("tree.json");
    let clique_json = r#"{"magma":"N3","size":3,"labels":[[1,3,"2"],[2,3,"1"]]}"#;
    std::fs::write(&clique, clique_json).unwrap();
    let out = run(&[
        "tree",
        "--input",
        clique.to_str().unwrap(),
        "--out",
        tree.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&[
        "tree",
        "--from-tree",
        "--magma",
        "N3",
        "--input",
        tree.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim_end(), clique_json);
}

#[test]
fn basis_round_trip_via_cli() {
    let dir = std::env::temp_dir().join("clique-operads-cli-basis");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("comb.json");
    let h = dir.join("h.json");
    let comb = r#"{"magma":"D0","arity":2,"basis":"fund","terms":[{"coeff":"2","clique":{"magma":"D0","size":2,"labels":[[1,3,"0"]]}}]}"#;
    std::fs::write(&input, comb).unwrap();
    let out = run(&[
        "basis",
        "--to",
        "H",
        "--input",
        input.to_str().unwrap(),
        "--out",
        h.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = run(&["basis", "--to", "fund", "--input", h.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim_end(), comb);
}

#[test]
fn distinct_exit_codes() {
    // Unknown magma.
    let out = run(&["dims", "--family", "NC", "--magma", "Q7", "--max", "3"]);
    assert_eq!(out.status.code(), Some(4));
    // Unknown family.
    let out = run(&["dims", "--family", "Zig", "--magma", "D0", "--max", "3"]);
    assert_eq!(out.status.code(), Some(5));
    // Admissibility violation.
    let out = run(&["dims", "--family", "Deg:2", "--magma", "N2", "--max", "3"]);
    assert_eq!(out.status.code(), Some(5));
    // Guard violation without --force.
    let out = run(&["enumerate", "--magma", "D0", "--arity", "7", "--count"]);
    assert_eq!(out.status.code(), Some(6));
    // Malformed JSON.
    let dir = std::env::temp_dir().join("clique-operads-cli-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = run(&[
        "compose",
        "--lhs",
        bad.to_str().unwrap(),
        "--rhs",
        bad.to_str().unwrap(),
        "--pos",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // Domain error: composition position out of range.
    let unit = dir.join("unit.json");
    std::fs::write(&unit, r#"{"magma":"D0","size":1,"labels":[]}"#).unwrap();
    let out = run(&[
        "compose",
        "--lhs",
        unit.to_str().unwrap(),
        "--rhs",
        unit.to_str().unwrap(),
        "--pos",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn guard_override_prints_estimate() {
    let out = run(&[
        "enumerate",
        "--magma",
        "D0",
        "--arity",
        "7",
        "--count",
        "--force",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# resource estimate: 268435456 cliques"));
    assert!(text.contains("count: 268435456"));
}

#[test]
fn enumerate_streams_canonical_order() {
    let out = run(&["enumerate", "--magma", "D0", "--arity", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with('{'))
        .collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], r#"{"magma":"D0","size":2,"labels":[]}"#);
    // Lexicographic: the all-unit clique first, fully solid last.
    assert_eq!(
        lines[7],
        r#"{"magma":"D0","size":2,"labels":[[1,2,"0"],[1,3,"0"],[2,3,"0"]]}"#
    );
}

#[test]
fn span_example() {
    let out = run(&["span", "--magma", "D0", "--arity", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("span dimension: 48"));
    assert!(text.contains("generators: 16"));
    assert!(text.contains("verdict: true"));
}
