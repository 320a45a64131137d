use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .output()
        .unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    (
        serde_json::from_slice(&o.stdout).unwrap(),
        o.status.code().unwrap(),
    )
}

fn statuses(v: &Value) -> Vec<String> {
    v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["span"]["status"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn analyze_four_vertex_example() {
    let (v, code) = json(&["analyze", "example4", "--char", "0,2,3,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(statuses(&v), vec!["simple"; 4]);
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["routes_agree"] == true));
    assert_eq!(v["b_vectors"][1]["b"], serde_json::json!([1, -1, 0, 1]));
}

#[test]
fn analyze_exit_codes() {
    let o = run(&["analyze", "rose(1)", "--char", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("inapplicable"));
    let (v, code) = json(&["analyze", "prime_set(6)", "--char", "2,5"]);
    assert_eq!(code, 0);
    assert_eq!(statuses(&v), vec!["not-simple", "simple"]);
}

#[test]
fn analyze_reads_files_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "# rose with three petals\nvertex v\nedge v v 3\n").unwrap();
    let (v, _) = json(&["analyze", path.to_str().unwrap(), "--char", "0,2"]);
    assert_eq!(statuses(&v), vec!["not-simple", "simple"]);

    let o = run_stdin(
        &["analyze", "-", "--char", "0", "--json"],
        r#"{"vertices": ["a"], "adjacency": [[3]]}"#,
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(statuses(&v), vec!["not-simple"]);
}

#[test]
fn analyze_is_deterministic() {
    let a = run(&["analyze", "example4", "--json"]);
    let b = run(&["analyze", "example4", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["analyze", "two_vertex(2,3,2)"]);
    let b = run(&["analyze", "two_vertex(2,3,2)"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_has_every_human_number() {
    let human = stdout(&run(&["k0", "two_vertex(2,2,2)"]));
    let (v, _) = json(&["k0", "two_vertex(2,2,2)"]);
    assert!(human.contains("Z_2 ⊕ Z_4"));
    assert_eq!(v["k0"]["group"], "Z_2 ⊕ Z_4");
    assert_eq!(v["smith_diagonal"], serde_json::json!([2, 4]));
    assert_eq!(v["unit_class_order"], 4);
    assert_eq!(v["m_matrix"], serde_json::json!([[-8, -4], [-2, -2]]));
    assert_eq!(v["p_divisible"].as_array().unwrap().len(), 8);
}

#[test]
fn k0_examples() {
    let (v, code) = json(&["k0", "rose(5)", "--char", "23"]);
    assert_eq!(code, 0);
    assert_eq!(v["k0"]["invariant_factors"], serde_json::json!([4]));
    assert_eq!(v["k0"]["unit_class"], serde_json::json!([1]));
    let ps: Vec<u64> = v["p_divisible"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["p"].as_u64().unwrap())
        .collect();
    assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23]);
    let o = run_stdin(&["k0", "-"], "vertex v\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("K0 = 0"));
}

#[test]
fn witness_membership_and_certificate() {
    let (v, code) = json(&["witness", "rose(3)", "--coeffs", "1", "--char", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["t"]["entries"], serde_json::json!(["1/2"]));
    assert_eq!(v["verification"], "VERIFIED");

    let (v, code) = json(&["witness", "example4", "--coeffs", "1,1,1,1", "--char", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["membership"], false);
    assert_eq!(v["certificate"]["rank"], 3);
    assert_eq!(v["certificate"]["augmented_rank"], 4);

    let (v, code) = json(&["witness", "example4", "--coeffs", "0,0,0,0", "--char", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["verification"], "VERIFIED");

    let (v, code) = json(&["witness", "rose(4)", "--coeffs", "-1/2", "--char", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["t"]["entries"], serde_json::json!(["-1/6"]));
}

#[test]
fn witness_certificate_separates() {
    // rational target with denominators: y . k must still equal 1
    let (v, code) = json(&[
        "witness",
        "example4",
        "--coeffs",
        "1/2,0,0,0",
        "--char",
        "0",
    ]);
    assert_eq!(code, 2);
    let y: Vec<String> = v["certificate"]["separator"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    assert_eq!(y[0], "2");
}

#[test]
fn witness_input_errors() {
    assert_eq!(
        run(&["witness", "rose(3)", "--coeffs", "1,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["witness", "rose(3)", "--coeffs", "1/2", "--char", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["witness", "rose(3)", "--coeffs", "x"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["witness", "rose(3)"]).status.code(), Some(1));
}

#[test]
fn family_output_parses_back() {
    let o = run(&["family", "two_vertex", "2", "2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let g: leavitt_core::Graph = text.parse().unwrap();
    assert_eq!(g.edge_count(), 9 + 2 + 4 + 3);
    assert_eq!(
        stdout(&run(&["family", "rose", "2"])),
        "# rose(2)\nvertex v1\nedge v1 v1 2\n"
    );
    assert_eq!(run(&["family", "rose"]).status.code(), Some(1));
    assert_eq!(run(&["family", "petal", "3"]).status.code(), Some(1));
}

#[test]
fn kp_check_examples() {
    let (v, code) = json(&["kp-check", "rose(2)", "matrix_rose(2,3)"]);
    assert_eq!(code, 0);
    assert_eq!(v["pointed_iso"], "yes");
    assert_eq!(v["contradiction"], false);
    assert!(v["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["agree"] == true));

    let (v, code) = json(&["kp-check", "rose(4)", "rose(6)"]);
    assert_eq!(code, 0);
    assert_eq!(v["pointed_iso"], "no");

    let (v, code) = json(&["kp-check", "line(2)", "rose(2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["pointed_iso"], "inapplicable");
    assert_eq!(v["first"]["purely_infinite_simple"], false);

    let (v, _) = json(&["kp-check", "rose(3)", "rose(3)", "--max-group-order", "1"]);
    assert_eq!(v["pointed_iso"], "undecided");
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn malformed_input_never_panics() {
    let cases = [
        "",
        "vertex",
        "vertex a\nedge a b",
        "vertex a\nedge a a -1",
        "vertex a\nedge a a 99999999999999999999999",
        "vertex a\nedge a a 2000000",
        "{\"vertices\": [\"a\"], \"adjacency\": [[18446744073709551615]]}",
        "{\"vertices\": [\"a\"]}",
        "{not json",
        "\u{0}\u{1}garbage",
    ];
    for text in cases {
        for cmd in [["analyze", "-"], ["k0", "-"]] {
            let o = run_stdin(&cmd, text);
            assert_eq!(o.status.code(), Some(1), "{cmd:?} on {text:?}");
            let err = String::from_utf8(o.stderr).unwrap();
            assert!(err.starts_with("error:"), "{err}");
            assert!(!err.contains("panicked"));
        }
    }
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["analyze", "rose(2)", "--char", "6"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn human_report_mentions_routes() {
    let out = stdout(&run(&["analyze", "example4", "--char", "2"]));
    assert!(out.contains("span route"));
    assert!(out.contains("k0 route"));
    assert!(out.contains("AGREE"));
    assert!(out.contains("B[v2] = (1, -1, 0, 1)"));
}
