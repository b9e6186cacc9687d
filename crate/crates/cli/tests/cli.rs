use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn genfermat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genfermat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const F49_B: &str =
    r#"{"family":"two_term","field":{"p":7,"h":2},"n":4,"m":4,"a":1,"b":1,"c":null}"#;
const F7_CUBIC: &str = r#"{"family":"two_term","field":{"p":7,"h":1},"n":3,"m":3,"a":1,"b":1}"#;
const HERMITIAN: &str = r#"{"family":"two_term","field":{"p":7,"h":1},"n":6,"m":6,"a":3,"b":5}"#;
const THREE_TERM: &str =
    r#"{"family":"three_term","field":{"p":7,"h":2},"n":8,"m":8,"a":1,"b":1,"c":1}"#;

#[test]
fn classify_both_agrees() {
    let out = genfermat(&["classify", F49_B, "--system", "conics", "--method", "both"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["frobenius"], "nonclassical");
    assert_eq!(v["case_label"], "fermat_conics_b");
    assert_eq!(v["method"], "both");
    assert_eq!(v["curve"]["field"]["modulus"], serde_json::json!([1, 0, 1]));

    let out = genfermat(&[
        "classify", F7_CUBIC, "--system", "lines", "--method", "both",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["geometric"], "classical");
}

#[test]
fn classify_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_genfermat"))
        .args(["classify", "--method", "determinant"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(F49_B.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["frobenius"], "nonclassical");
}

#[test]
fn invalid_input_exits_2() {
    let out = genfermat(&["classify", r#"{"family":"#]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Malformed");

    let out = genfermat(&[
        "count",
        r#"{"family":"two_term","field":{"p":7,"h":1},"n":7,"m":3,"a":1,"b":1}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_all_methods() {
    let out = genfermat(&["count", HERMITIAN, "--method", "all"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["total"], 36);
    assert_eq!(v["agree"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);

    let v = json(&genfermat(&["count", THREE_TERM]));
    assert_eq!(v["total"], 288);
}

#[test]
fn count_unsupported_infinity_warns() {
    let curve = r#"{"family":"two_term","field":{"p":7,"h":2},"n":9,"m":6,"a":1,"b":1}"#;
    let out = genfermat(&["count", curve, "--method", "smooth"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("UnsupportedInfinity"));
    let v = json(&out);
    assert!(v.get("total").is_none());
    assert_eq!(v["reports"][0]["infinity_branches"], 0);
}

#[test]
fn bound_worked_instance() {
    let v = json(&genfermat(&["bound", F7_CUBIC]));
    assert_eq!(v["sv_bound"], 13);
    assert_eq!(v["genus"], 1);
}

#[test]
fn scan_flags_nonclassical_rows_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &str| {
        vec![
            "scan".to_string(),
            "--p=7".into(),
            "--h=2".into(),
            "--n=3..16".into(),
            "--m=3..16".into(),
            "--coefficients=subfield:1".into(),
            format!("--out={p}"),
        ]
    };
    for p in [&a, &b] {
        let argv = args(p.to_str().unwrap());
        let out = genfermat(&argv.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(out.status.success());
        assert!(json(&out)["summary"]["rows"].as_u64().unwrap() > 0);
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,h,modulus,n,m,a,b,c,system,case_label,geometric,frobenius,N_exact,N_formula,sv_bound,hw_bound"
    );
    let flagged: Vec<&str> = lines
        .filter(|l| l.contains("fermat_conics_b") && l.contains(",nonclassical,nonclassical,"))
        .collect();
    assert!(!flagged.is_empty());
    assert!(flagged.iter().all(|l| l.starts_with("7,2,1 0 1,4,4,")));
}

#[test]
fn scan_empty_grid_and_budget() {
    let out = genfermat(&["scan", "--n=5..4"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,h,modulus,n,m,a,b,c,system,case_label,geometric,frobenius,N_exact,N_formula,sv_bound,hw_bound\n"
    );

    let out = genfermat(&["scan", "--budget=10", "--n=3..12"]);
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_genfermat"))
        .args(["scan", "--n=3..12"])
        .env("GENFERMAT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_detects_injected_fault() {
    let out = genfermat(&["verify", "--suite", "formulas", "--inject-fault", "formula"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"Hermitian-type count"), "{failed:?}");
}
