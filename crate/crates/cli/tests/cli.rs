use std::io::Write;
use std::process::{Command, Stdio};

use grentropy_cli::{dispatch, Outcome, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["grentropy"];
    argv.extend_from_slice(args);
    dispatch(&argv, &mut stdin.as_bytes())
}

fn json(o: &Outcome) -> Value {
    assert_eq!(o.status, EXIT_OK, "{}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn gen(args: &[&str]) -> String {
    let mut argv = vec!["gen"];
    argv.extend_from_slice(args);
    let o = run(&argv, "");
    assert_eq!(o.status, EXIT_OK, "{}", o.stderr);
    o.stdout
}

fn close(v: &Value, x: f64) -> bool {
    (v.as_f64().unwrap() - x).abs() < 1e-9
}

#[test]
fn star_renyi_through_pipe() {
    let edges = gen(&["star", "4"]);
    assert_eq!(edges, "0 1\n0 2\n0 3\n");
    let v = json(&run(
        &["compute", "--alpha", "2", "--dist", "orbits"],
        &edges,
    ));
    assert!(close(&v["renyi"], 0.678071905113), "{v}");
    assert!(close(&v["shannon"], 0.811278124459));
    assert_eq!(v["orbit_sizes"], serde_json::json!([1, 3]));
}

#[test]
fn path_six_orbits() {
    let v = json(&run(&["compute", "--alpha", "0.5"], &gen(&["path", "6"])));
    assert!(close(&v["renyi"], 3f64.log2()));
}

#[test]
fn twelve_significant_digits() {
    let v = json(&run(&["compute"], &gen(&["star", "4"])));
    assert_eq!(v["shannon"].to_string(), "0.811278124459");
    assert!(v["alpha"].is_null() && v["renyi"].is_null());
}

#[test]
fn complete_graph_single_orbit() {
    let v = json(&run(&["compute"], &gen(&["complete", "5"])));
    assert_eq!(v["shannon"].as_f64(), Some(0.0));
    assert_eq!(v["orbit_sizes"], serde_json::json!([5]));
}

#[test]
fn linear_functional_params_echoed() {
    let v = json(&run(
        &["compute", "--dist", "linear", "--c", "2,1"],
        &gen(&["star", "4"]),
    ));
    assert_eq!(v["functional_params"]["S"].as_f64(), Some(18.0));
    assert_eq!(
        v["functional_params"]["coeffs"],
        serde_json::json!([2.0, 1.0])
    );
    assert_eq!(v["distribution_kind"], "linear");
}

#[test]
fn thm1_counterexample_strict() {
    let o = run(
        &[
            "check",
            "thm1",
            "--alpha",
            "0.5",
            "--variant",
            "literal",
            "--probs",
            "0.9,0.1",
            "--strict",
        ],
        "",
    );
    assert_eq!(o.status, EXIT_VIOLATION);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["holds"], Value::Bool(false));
    assert!(close(&v["bound"], 0.495712168420558));

    let o = run(
        &[
            "check",
            "thm1",
            "--alpha",
            "0.5",
            "--variant",
            "corrected",
            "--probs",
            "0.9,0.1",
            "--strict",
        ],
        "",
    );
    assert_eq!(o.status, EXIT_OK);
    // without --strict a violation is only reported
    let o = run(
        &["check", "thm1", "--alpha", "0.5", "--probs", "0.9,0.1"],
        "",
    );
    assert_eq!(o.status, EXIT_OK);
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        vec!["compute", "--dist", "linear", "--beta", "2"],
        vec!["compute", "--frobnicate"],
        vec!["gen", "star", "2"],
        vec!["gen", "gnp", "5"],
        vec!["check", "thm1", "--alpha", "1", "--probs", "0.5,0.5"],
        vec!["check", "thm4", "--probs", "0.5,0.5"],
        vec!["nonsense"],
    ] {
        let o = run(&args, "0 1\n1 2\n");
        assert_eq!(o.status, EXIT_USAGE, "{args:?}");
        assert_eq!(o.stderr.lines().count(), 1, "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty());
    }
    let o = run(&["compute"], "0 x\n");
    assert_eq!(o.status, EXIT_USAGE);
    assert!(o.stderr.contains("line 1"), "{}", o.stderr);
}

#[test]
fn gnp_output_is_reproducible_and_pipeable() {
    let a = gen(&["gnp", "9", "--p", "0.3", "--seed", "17"]);
    assert_eq!(a, gen(&["gnp", "9", "--p", "0.3", "--seed", "17"]));
    let v = json(&run(&["compute", "--dist", "exp", "--beta", "2"], &a));
    assert_eq!(v["n"], 9);
}

#[test]
fn check_subcommands_produce_reports() {
    let star = gen(&["star", "4"]);
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["check", "ordering", "--probs", "0.2,0.8"], ""),
        (
            vec!["check", "jensen", "--probs", "0.2,0.8", "--alpha", "3"],
            "",
        ),
        (
            vec!["check", "thm1", "--epsilon", "--variant", "corrected"],
            star.as_str(),
        ),
        (vec!["check", "thm3", "--c", "2,1"], star.as_str()),
        (
            vec![
                "check",
                "thm4",
                "--probs",
                "0.5,0.5",
                "--probs2",
                "0.25,0.75",
                "--psi",
                "2",
            ],
            "",
        ),
        (
            vec!["check", "thm4", "--c", "1,1", "--c2", "2,1.5"],
            star.as_str(),
        ),
        (
            vec![
                "check", "thm5", "--probs", "0.5,0.5", "--probs2", "0.5,0.5", "--phi", "0.1",
            ],
            "",
        ),
        (
            vec![
                "check",
                "thm5",
                "--c",
                "2,1",
                "--c2",
                "1,1",
                "--variant",
                "corrected",
                "--log-base",
                "e",
            ],
            star.as_str(),
        ),
        (
            vec![
                "check",
                "thm6",
                "--c",
                "2,1",
                "--c2",
                "1,1",
                "--weights",
                "1,2",
                "--symmetric",
            ],
            star.as_str(),
        ),
        (vec!["check", "connected", "--c", "2,1"], star.as_str()),
        (
            vec![
                "check",
                "connected",
                "--c",
                "1,1",
                "--beta",
                "0.5",
                "--variant",
                "corrected",
            ],
            star.as_str(),
        ),
    ];
    for (args, stdin) in cases {
        let v = json(&run(&args, stdin));
        assert!(v["theorem"].is_string(), "{args:?}");
        assert!(v["holds"].is_boolean() || v["holds"].is_null());
    }
    let v = json(&run(
        &[
            "check",
            "thm4",
            "--probs",
            "0.5,0.5",
            "--probs2",
            "0.25,0.75",
            "--psi",
            "2",
        ],
        "",
    ));
    assert!(close(&v["bound"], 1.899968626952992));
    let v = json(&run(
        &[
            "check", "thm5", "--probs", "0.5,0.5", "--probs2", "0.5,0.5", "--phi", "0.1",
        ],
        "",
    ));
    assert!(close(&v["bound"], 1.894427190999916));
    let v = json(&run(
        &["check", "thm4", "--c", "1,1", "--c2", "2,1.5"],
        &star,
    ));
    assert_eq!(v["theorem"], "thm4_corollary");
}

#[test]
fn closed_forms_list() {
    let v = json(&run(
        &[
            "check", "closed", "--class", "star", "--n", "4", "--alpha", "2",
        ],
        "",
    ));
    let arr = v.as_array().unwrap();
    let exact = arr
        .iter()
        .find(|r| r["theorem"] == "star_renyi_exact")
        .unwrap();
    assert!(close(&exact["bound"], 0.6780719051126377));
    assert_eq!(exact["holds"], Value::Bool(true));
    let v = json(&run(
        &[
            "check",
            "closed",
            "--class",
            "path",
            "--n",
            "6",
            "--c",
            "1,1,1,1,1",
        ],
        "",
    ));
    assert!(v
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["theorem"] == "path_functional_bound"));
}

#[test]
fn sweep_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"seed": 3, "n_range": [3, 5], "edge_probabilities": [0.6], "trials_per_cell": 2, "alpha_grid": [0.5, 2.0]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let a = run(&["sweep", "--config", p], "");
    assert_eq!(a.status, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, run(&["sweep", "--config", p], "").stdout);
    let csv = run(&["sweep", "--config", p, "--format", "csv"], "");
    assert!(csv.stdout.starts_with("theorem,variant,"));
    let strict = run(&["sweep", "--config", p, "--strict"], "");
    let report: Value = serde_json::from_str(&strict.stdout).unwrap();
    let violated: u64 = report["aggregates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a["violated"].as_u64().unwrap())
        .sum();
    assert_eq!(
        strict.status,
        if violated > 0 {
            EXIT_VIOLATION
        } else {
            EXIT_OK
        }
    );

    let missing = run(
        &[
            "sweep",
            "--config",
            dir.path().join("nope.json").to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(missing.status, EXIT_USAGE);
}

#[test]
fn binary_pipes_gen_into_compute() {
    let bin = env!("CARGO_BIN_EXE_grentropy");
    let gen = Command::new(bin)
        .args(["gen", "wheel", "6"])
        .output()
        .unwrap();
    assert!(gen.status.success());
    let mut child = Command::new(bin)
        .args(["compute", "--alpha", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["orbit_sizes"], serde_json::json!([1, 5]));

    let bad = Command::new(bin)
        .args(["check", "thm1", "--probs", "0.9,0.1", "--strict"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_VIOLATION));
}
