use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn substratum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_substratum"))
        .args(args)
        .env_remove("SUBSTRATUM_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn toeplitz_summary_for_period_doubling() {
    let o = substratum(&["toeplitz", &fixture("pd"), "--range", "-100..100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "Aper ∩ [-100,100] = {-1}"), "{}", stdout(&o));
}

#[test]
fn fixed_point_window() {
    let o = substratum(&["fixed-point", &fixture("bigdiag"), "--range", "0..8"]);
    assert_eq!(stdout(&o), "acbbbabaa\n");
    let o = substratum(&["fixed-point", &fixture("bigdiag"), "--range", "-1..0"]);
    assert_eq!(stdout(&o), "ba\n");
}

#[test]
fn direct_automaton_dot_has_figure_edges() {
    let o = substratum(&["automaton", &fixture("bigdiag"), "--reading", "direct", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    for edge in [
        "q0 -> q0 [label=\"0\"]",
        "q0 -> q2 [label=\"1\"]",
        "q0 -> q1 [label=\"2\"]",
        "q1 -> q1 [label=\"0\"]",
        "q1 -> q0 [label=\"1,2\"]",
        "q2 -> q1 [label=\"0,1\"]",
        "q2 -> q0 [label=\"2\"]",
    ] {
        assert!(dot.contains(edge), "missing {edge}\n{dot}");
    }
    assert!(dot.contains("init_nonneg -> q0 [label=\"ℕ₀\"]"));
    assert!(dot.contains("init_neg -> q1 [label=\"−ℕ\"]"));
}

#[test]
fn automaton_json_round_trips_through_the_library() {
    let o = substratum(&["automaton", &fixture("pd"), "--format", "json", "--minimize"]);
    let m = substratum::Dfao::from_json(&stdout(&o)).unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m.run(-1).unwrap(), 0);
}

#[test]
fn exit_codes() {
    let refused = substratum(&["toeplitz", &fixture("thue-morse"), "--range", "0..10"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("column number 2"));

    let invalid = substratum(&["validate", &fixture("bad-length")]);
    assert_eq!(invalid.status.code(), Some(1));

    let missing = substratum(&["validate", "/nonexistent/file.json"]);
    assert_eq!(missing.status.code(), Some(1));

    let over = substratum(&["toeplitz", &fixture("bigdiag"), "--range", "-500..500", "--certify"]);
    assert_eq!(over.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&over.stderr).contains("SUBSTRATUM_BUDGET"));
}

#[test]
fn check_passes_on_worked_examples() {
    for name in ["pd", "bigdiag", "thue-morse"] {
        let o = substratum(&["check", &fixture(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn certify_with_larger_budget() {
    let o = Command::new(env!("CARGO_BIN_EXE_substratum"))
        .args(["toeplitz", &fixture("bigdiag"), "--range", "-50..50", "--certify"])
        .env("SUBSTRATUM_BUDGET", "20000000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 inconsistent, 0 uncovered"), "{}", stdout(&o));
}

#[test]
fn semigroup_and_kernel_reports() {
    let o = stdout(&substratum(&["semigroup", &fixture("pd")]));
    assert!(o.contains("structure semigroup (3): (a,a)^T (a,b)^T (b,b)^T"));
    assert!(o.contains("generated by columns (4)"));
    let o = stdout(&substratum(&["kernel", &fixture("pd"), "--depth", "3"]));
    assert!(o.starts_with("kernel size: 3\n"));
    assert!(o.contains(": 3 distinct"));
}

#[test]
fn reduced_graph_for_period_doubling() {
    let o = stdout(&substratum(&["reduced-graph", &fixture("pd")]));
    assert!(o.contains("cycle (a,b)^T digits [3] prefix [] address -1"), "{o}");
    let dot = stdout(&substratum(&["reduced-graph", &fixture("pd"), "--format", "dot"]));
    assert!(dot.contains("q0 -> q0 [label=\"3\"]"));
}

#[test]
fn simplify_prints_power() {
    let o = substratum(&["simplify", &fixture("pd")]);
    assert!(stdout(&o).contains(r#""rules":{"a":"abaa","b":"abab"}"#));
    assert_eq!(String::from_utf8_lossy(&o.stderr), "exponent 2\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["reduced-graph", &fixture("bigdiag")];
    assert_eq!(stdout(&substratum(&args)), stdout(&substratum(&args)));
    let args = ["automaton", &fixture("bigdiag"), "--format", "table"];
    assert_eq!(stdout(&substratum(&args)), stdout(&substratum(&args)));
}

#[test]
fn verbose_toeplitz_table() {
    let o = stdout(&substratum(&["toeplitz", &fixture("pd"), "--range", "-1..7", "--verbose"]));
    let lines: Vec<&str> = o.lines().collect();
    assert!(lines.contains(&"-1 aperiodic - - (a,b)^T (a,b)^T"), "{o}");
    assert!(lines.contains(&"0 periodic 4 a (a,a)^T (a,a)^T"), "{o}");
    assert!(lines.contains(&"7 periodic 16 b (b,b)^T (b,b)^T"), "{o}");
}
