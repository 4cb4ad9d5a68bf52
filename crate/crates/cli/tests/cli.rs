use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use monodec::graphs::WeightedGraph;
use monodec::SetFunction;
use serde_json::Value;
use sha2::Digest;

static COUNTER: AtomicUsize = AtomicUsize::new(0);

fn scratch(name: &str, contents: &str) -> PathBuf {
    let id = COUNTER.fetch_add(1, Ordering::Relaxed);
    let path = std::env::temp_dir().join(format!("monodec-cli-{}-{id}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    assert_eq!(
        code(out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn generated(args: &[&str]) -> PathBuf {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(code(&out), 0);
    scratch(&args.join("-"), &String::from_utf8(out.stdout).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_graphs_round_trip() {
    for args in [
        &["wheel", "5"][..],
        &["complete-minus-edge", "7"],
        &["complete-bipartite", "2", "3"],
        &["cycle", "5"],
    ] {
        let mut full = vec!["generate"];
        full.extend_from_slice(args);
        let text = run(&full).stdout;
        let g: WeightedGraph = serde_json::from_slice(&text).unwrap();
        let again: Value = serde_json::to_value(&g).unwrap();
        assert_eq!(again, serde_json::from_slice::<Value>(&text).unwrap());
    }
}

#[test]
fn generated_functions_round_trip() {
    for args in [
        &["cex-sum", "2"][..],
        &["cex-diff", "3"],
        &["lnl", "2", "0b0111"],
        &["partition-matroid-rank", "2", "1"],
        &["extremal", "0b101", "--n", "4"],
        &["wheel", "4", "--as-function"],
        &["hyperedge", "3", "--as-function", "--function", "induced"],
    ] {
        let mut full = vec!["generate"];
        full.extend_from_slice(args);
        let text = run(&full).stdout;
        let f: SetFunction = serde_json::from_slice(&text).unwrap();
        let again: Value = serde_json::to_value(&f).unwrap();
        assert_eq!(again, serde_json::from_slice::<Value>(&text).unwrap());
    }
}

#[test]
fn wheel_six_sum_objective() {
    let w6 = generated(&["wheel", "6"]);
    let report = json(&run(&["decompose", path_str(&w6), "--kind", "sum"]));
    assert_eq!(report["objective"], "15/2");
    assert_eq!(report["kind"], "sum");
    let phi1: SetFunction = serde_json::from_value(report["phi1"].clone()).unwrap();
    assert!(phi1.is_increasing() && phi1.is_submodular());
}

#[test]
fn sum_counterexample_is_not_two_bounded() {
    let cex = generated(&["cex-sum", "3"]);
    let report = json(&run(&[
        "decompose",
        path_str(&cex),
        "--kind",
        "sum",
        "--c",
        "2",
    ]));
    assert_eq!(report["feasible"], false);
    assert_eq!(report["decomposition"], Value::Null);
}

#[test]
fn check_reports_weak_three_alternation_failure() {
    let cex = generated(&["cex-sum", "3"]);
    let report = json(&run(&["check", path_str(&cex)]));
    assert_eq!(report["submodular"]["holds"], true);
    let weak = &report["weakly_alternating"];
    assert_eq!(weak[1]["holds"], true);
    assert_eq!(weak[2]["k"], 3);
    assert_eq!(weak[2]["holds"], false);
    assert!(weak[2]["witness"]["tuple"].as_array().unwrap().len() == 3);
    assert_eq!(report["weakly_infinite_alternating"]["holds"], false);
}

#[test]
fn check_incident_function_of_a_cycle() {
    let c4 = generated(&["cycle", "4"]);
    let report = json(&run(&["check", path_str(&c4), "--function", "incident"]));
    assert_eq!(report["input"], "incident-function");
    assert_eq!(report["infinite_alternating"]["holds"], true);
    assert_eq!(report["increasing"]["holds"], true);
}

#[test]
fn check_non_submodular_witness() {
    let f = scratch("super.json", r#"{"n":2,"values":["0","0","0","1"]}"#);
    let report = json(&run(&["check", path_str(&f)]));
    let w = &report["submodular"]["witness"];
    assert_eq!(report["submodular"]["holds"], false);
    assert_eq!(
        (w["X"].as_u64(), w["u"].as_u64(), w["v"].as_u64()),
        (Some(0), Some(0), Some(1))
    );
    assert_eq!(w["gap"], "-1");
    assert_eq!(report["supermodular"]["holds"], true);
}

#[test]
fn check_lnl_instance() {
    let f = generated(&["lnl", "2", "0b0111"]);
    let report = json(&run(&["check", path_str(&f)]));
    assert_eq!(report["alternating"][1]["holds"], true);
    assert_eq!(report["alternating"][2]["holds"], false);
}

#[test]
fn report_header_and_determinism() {
    let text = r#"{"n":2,"values":["0","1","1","1"]}"#;
    let f = scratch("or.json", text);
    let a = run(&["check", path_str(&f)]);
    let b = run(&["check", path_str(&f)]);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));
    let digest = hex::encode(sha2::Sha256::digest(text.as_bytes()));
    assert_eq!(report["input_sha256"], digest);
}

#[test]
fn coverage_diff_parts_are_infinite_alternating() {
    let f = scratch(
        "mixed.json",
        r#"{"n":3,"values":["0","2","-1","3","1/2","0","4","-2"]}"#,
    );
    for construction in ["canonical", "uniform"] {
        let report = json(&run(&[
            "decompose",
            path_str(&f),
            "--kind",
            "coverage-diff",
            "--construction",
            construction,
        ]));
        assert_eq!(report["phi1_infinite_alternating"], true);
        assert_eq!(report["phi2_infinite_alternating"], true);
        assert_eq!(report["reconstructs"], true);
    }
}

#[test]
fn weakly_canonical_and_its_precondition() {
    let c4 = generated(&["cycle", "4", "--as-function"]);
    let report = json(&run(&[
        "decompose",
        path_str(&c4),
        "--kind",
        "weakly-canonical",
    ]));
    for key in [
        "difference_bound",
        "weighted_bound",
        "phi_bound",
        "mu_bound",
    ] {
        assert_eq!(report["seven_bound"][key], true);
    }
    let lnl = generated(&["lnl", "2", "0b0111"]);
    let out = run(&["decompose", path_str(&lnl), "--kind", "weakly-canonical"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn diff_decomposition_of_the_diff_counterexample() {
    let f = generated(&["cex-diff", "3"]);
    let report = json(&run(&["decompose", path_str(&f), "--kind", "diff"]));
    let phi2: SetFunction = serde_json::from_value(report["phi2"].clone()).unwrap();
    assert!(*phi2.total() >= monodec::rational::int(3));
}

#[test]
fn graph_report_for_k7_minus_edge() {
    let g = generated(&["complete-minus-edge", "7"]);
    let report = json(&run(&["graph", path_str(&g), "--report", "cuts"]));
    assert_eq!(report["cuts"]["max_cut"]["value"], "12");
    assert!(report.get("bounds").is_none());
    let report = json(&run(&["graph", path_str(&g), "--report", "triangles"]));
    assert_eq!(
        report["triangles"]["nu_star"],
        report["triangles"]["tau_star"]
    );
}

#[test]
fn graph_bounds_for_k4_and_csv_input() {
    let k4 = scratch(
        "k4.csv",
        "u,v,w\n0,1,1\n0,2,1\n0,3,1\n1,2,1\n1,3,1\n2,3,1\n",
    );
    let report = json(&run(&["graph", path_str(&k4), "--report", "all"]));
    assert_eq!(report["triangles"]["nu_star"], "2");
    assert_eq!(report["bounds"]["ordered"], true);
    assert_eq!(report["bounds"]["sum_decomposition_norm"], "4");
}

#[test]
fn output_flag_writes_file() {
    let target = scratch("out.json", "");
    let out = run(&["generate", "path", "4", "--output", path_str(&target)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let g: WeightedGraph =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(g.edges().len(), 3);
}

#[test]
fn probe_is_seeded_and_deterministic() {
    let k3 = generated(&["complete", "3"]);
    let a = run(&["probe", path_str(&k3), "--trials", "20", "--seed", "7"]);
    let b = run(&["probe", path_str(&k3), "--trials", "20", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let report = json(&a);
    assert_eq!(report["violation"], Value::Null);
    assert_eq!(report["trials"].as_array().unwrap().len(), 20);
    assert!(report["min_slack"].is_string());
    let c = run(&["probe", path_str(&k3), "--trials", "20", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn probe_with_no_trials() {
    let k3 = generated(&["complete", "3"]);
    let report = json(&run(&["probe", path_str(&k3), "--trials", "0"]));
    assert_eq!(report["trials"].as_array().unwrap().len(), 0);
    assert_eq!(report["min_slack"], Value::Null);
}

#[test]
fn exit_codes() {
    let missing = std::env::temp_dir().join("monodec-cli-does-not-exist.json");
    assert_eq!(code(&run(&["check", path_str(&missing)])), 1);
    let broken = scratch("broken.json", "{\"n\": 2, \"values\": [");
    assert_eq!(code(&run(&["check", path_str(&broken)])), 1);
    let short = scratch("short.json", r#"{"n":2,"values":["0","1"]}"#);
    assert_eq!(code(&run(&["check", path_str(&short)])), 1);
    assert_eq!(code(&run(&["generate", "wheel"])), 1);
    assert_eq!(code(&run(&["no-such-command"])), 1);

    let k3 = generated(&["complete", "3"]);
    assert_eq!(code(&run(&["check", path_str(&k3), "--max-n", "13"])), 2);
    assert_eq!(code(&run(&["check", path_str(&k3), "--max-n", "2"])), 2);
    assert_eq!(
        code(&run(&[
            "check",
            path_str(&k3),
            "--max-n",
            "13",
            "--i-know-this-is-exponential"
        ])),
        0
    );
    let k9 = generated(&["complete", "9"]);
    assert_eq!(code(&run(&["probe", path_str(&k9), "--trials", "1"])), 2);
    let big = generated(&["cycle", "11"]);
    assert_eq!(
        code(&run(&["decompose", path_str(&big), "--kind", "sum"])),
        2
    );

    let superm = scratch("superm.json", r#"{"n":2,"values":["0","0","0","1"]}"#);
    assert_eq!(
        code(&run(&["decompose", path_str(&superm), "--kind", "sum"])),
        3
    );
    let shifted = scratch("shifted.json", r#"{"n":1,"values":["1","2"]}"#);
    assert_eq!(
        code(&run(&["decompose", path_str(&shifted), "--kind", "diff"])),
        3
    );
}
