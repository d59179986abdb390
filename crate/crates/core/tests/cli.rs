use std::io::Write;
use std::process::Command;

use ecsum::cli::run_command;

fn ecsum(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ecsum"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn add_opposite_points_is_infinity() {
    let (code, out, _) = ecsum(&["add", "--curve", "Q,a=0,b=1", "--points", "(0,1);(0,-1)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "O\n");
}

#[test]
fn add_reports_the_case() {
    let (code, out, _) = ecsum(&[
        "add",
        "--curve",
        "Q,a=0,b=1",
        "--points",
        "(2,3);(2,3)",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "{\"case\":\"tangent\",\"point\":{\"x\":\"0\",\"y\":\"1\"}}\n"
    );
}

#[test]
fn sum3_worked_example() {
    let (code, out, _) = ecsum(&[
        "sum3",
        "--curve",
        "Fp:5,a=1,b=1",
        "--points",
        "(0,1);(2,1);(4,2)",
        "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"x4": "2", "y4": "4", "V": "1", "c0": "1", "c1": "1", "c2": "2"})
    );
}

#[test]
fn check_assoc_passes_and_counts_cases() {
    let (code, out, _) = ecsum(&[
        "check", "assoc", "--curve", "Fp:10007", "--trials", "10000", "--seed", "7", "--json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let counts = &v["reports"][0]["counts"];
    for case in ["chord", "tangent", "vertical", "identity"] {
        assert!(
            counts[format!("case:{case}")].as_u64().unwrap() > 0,
            "{case}"
        );
    }
}

#[test]
fn check_reports_are_deterministic() {
    for suite in ["assoc", "sum3", "multisum", "vanishing"] {
        let args = [
            "check", suite, "--trials", "30", "--seed", "11", "--max-n", "5", "--json",
        ];
        assert_eq!(run_command(args), run_command(args), "{suite}");
    }
    let a = run_command(["check", "sum3", "--trials", "30", "--seed", "1", "--json"]);
    let b = run_command(["check", "sum3", "--trials", "30", "--seed", "2", "--json"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn check_over_q_and_fixed_curves() {
    let out = run_command([
        "check",
        "vanishing",
        "--curve",
        "Q",
        "--trials",
        "3",
        "--max-n",
        "5",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = run_command([
        "check",
        "sum3",
        "--curve",
        "Fp:10007,a=2,b=3",
        "--trials",
        "50",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let out = run_command([
        "check",
        "multisum",
        "--primes",
        "10007,1000003",
        "--trials",
        "10",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn sumn_from_json_file() {
    let dir = std::env::temp_dir().join(format!("ecsum-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sum.json");
    let doc = r#"{"curve":{"a":"1","b":"1","field":"Fp:5"},"points":[{"x":"0","y":"1"},{"x":"2","y":"1"},{"x":"4","y":"2"}]}"#;
    std::fs::File::create(&path)
        .unwrap()
        .write_all(doc.as_bytes())
        .unwrap();
    let (code, out, _) = ecsum(&["sumn", "--input", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"x\":\"2\",\"y\":\"4\",\"cofactors\":[\"1\",\"1\",\"2\",\"4\"],\"method\":\"closed-form\"}\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sumn_non_generic_and_fallback() {
    let args = [
        "sumn",
        "--curve",
        "Q,a=0,b=17",
        "--points",
        "(-2,3);(-2,-3);(2,5)",
        "--json",
    ];
    let (code, out, err) = ecsum(&args);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&err).unwrap();
    assert!(v["hypothesis"].is_string());

    let mut with_fallback = args.to_vec();
    with_fallback.push("--fallback");
    let (code, out, _) = ecsum(&with_fallback);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["method"], "iterated");
    assert_eq!((v["x"].as_str(), v["y"].as_str()), (Some("2"), Some("5")));
}

#[test]
fn prove_verdicts() {
    let (code, out, _) = ecsum(&["prove", "eq2", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        (v["mode"].as_str(), v["result"].as_bool()),
        (Some("exact"), Some(true))
    );

    let (code, _, _) = ecsum(&["prove", "lemma", "--no-relations"]);
    assert_eq!(code, 1);

    let (code, out, _) = ecsum(&["prove", "detm3", "--timeout-ms", "0", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["mode"], "schwartz-zippel");
    assert_eq!(v["trials"], 20);
    assert_eq!(v["prime"], 2305843009213693951u64);
}

#[test]
fn usage_and_input_errors() {
    let cases: &[&[&str]] = &[
        &[],
        &["sum4"],
        &["add", "--points", "(0,1);(0,-1)"],
        &["add", "--curve", "Q,a=0", "--points", "(0,1);(0,-1)"],
        &["add", "--curve", "Fp:9,a=0,b=1", "--points", "(0,1);(0,-1)"],
        &["add", "--curve", "Q,a=0,b=0", "--points", "(0,0);(0,0)"],
        &["add", "--curve", "Q,a=0,b=1", "--points", "(0,1)"],
        &["add", "--curve", "Q,a=0,b=1", "--points", "(1,1);(0,1)"],
        &[
            "sum3",
            "--curve",
            "Q,a=0,b=1",
            "--points",
            "(0,1);(0,1;(0,1)",
        ],
        &["check", "assoc", "--trials", "0"],
        &["check", "parity"],
        &["check", "multisum", "--min-n", "1"],
        &["check", "sum3", "--curve", "Q,a=0,b=1"],
        &["prove", "eq3"],
        &["prove", "detm:1"],
        &["prove", "eq2", "--prime", "91", "--timeout-ms", "0"],
    ];
    for args in cases {
        let (code, out, err) = ecsum(args);
        assert_eq!(code, 2, "{args:?}: {out}{err}");
        assert!(out.is_empty(), "{args:?} wrote stdout: {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}
