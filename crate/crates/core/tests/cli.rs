use std::process::Command;

use cbdiv::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("cbdiv").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn rank_prints_two() {
    let (code, out, _) = call(&["rank", "B", "2", "--level", "1", "--weights", "w2,w2,w2,w2"]);
    assert_eq!((code, out.as_str()), (0, "2\n"));
    let (_, out, _) = call(&["rank", "B", "2", "--weights", "w2,w2,w2,w2", "--format", "json"]);
    assert_eq!(out, "{\"rank\":2}\n");
}

#[test]
fn divisor_json_b2() {
    let (code, out, _) = call(&["divisor", "B", "2", "--level", "1", "--weights", "w2,w2,w2,w2", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(r#"{"n":4,"psi":["5/8","5/8","5/8","5/8"],"#), "{out}");
}

#[test]
fn bracket_weights_and_levels() {
    let (code, out, _) = call(&["fusion", "B", "2", "--level", "2", "--weights", "[1,0],[1,0]"]);
    assert_eq!(code, 0);
    assert_eq!(out, "w0: 1\n2*w2: 1\n2*w1: 1\n");
    let (code, out, _) = call(&["rank", "B", "2", "--level", "2", "--weights", "2*w1,[2,0],w0"]);
    assert_eq!((code, out.as_str()), (0, "1\n"));
}

#[test]
fn certify_and_suites_succeed() {
    assert_eq!(call(&["certify", "B", "3", "--weights", "w1,w1,w3,w3,w3,w3"]).0, 0);
    assert_eq!(call(&["certify", "B", "2", "--weights", "w1,w1,w1,w1"]).0, 0);
    assert_eq!(call(&["certify", "D", "4", "--weights", "w1,w1,w1,w4,w3"]).0, 0);
    assert_eq!(call(&["verify-scaling", "--rank", "2", "--n", "4", "--N", "2"]).0, 0);
    assert_eq!(call(&["verify-prop", "B", "2", "--weights", "w1,w1,w2,w2"]).0, 0);
    let (code, out, _) = call(&["verify-theorem1", "--family", "B", "--max-n", "6", "--max-rank", "3", "--quiet"]);
    assert_eq!(code, 0);
    assert_eq!(out, "8 instances, 0 failed\n");
    let (code, out, _) = call(&["lp-search", "D", "4", "--weights", "w1,w1,w4,w4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("feasible\n"));
}

#[test]
fn certify_undecided_above_cap() {
    let (code, out, _) = call(&["certify", "B", "2", "--weights", "w1,w1,w1,w1,w1,w1", "--lp-cap", "5"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("status: undecided\n"), "{out}");
}

#[test]
fn lp_search_reports_infeasible() {
    // -ψ_1 on M_{0,4} has negative degree, so no weighting exists.
    let dir = std::env::temp_dir().join(format!("cbdiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("neg.json");
    std::fs::write(&path, r#"{"n":4,"psi":["-1","0","0","0"],"boundary":[]}"#).unwrap();
    let (code, out, _) = call(&["lp-search", "--divisor", path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (1, "infeasible\n"));
    let (code, out, _) = call(&["lp-search", "--divisor", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!((code, out.as_str()), (1, "null\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    for args in [
        &["rank", "B", "1", "--weights", "w1,w1,w1,w1"][..],
        &["rank", "B", "2", "--weights", "w1,w3"],
        &["rank", "B", "2", "--weights", "w1,,w1"],
        &["rank", "B", "2", "--weights", "2*w2"],
        &["rank", "E", "6", "--weights", "w1"],
        &["rank", "B", "2", "--level", "0", "--weights", "w0"],
        &["divisor", "B", "2", "--weights", "w1,w1"],
        &["lp-search", "B", "2", "--weights", "w1,w1,w1,w1,w1,w1", "--lp-cap", "5"],
        &["lp-search"],
        &["verify-theorem1", "--family", "C", "--max-rank", "3"],
        &["verify-scaling", "--rank", "2", "--n", "5", "--N", "2"],
        &["frobnicate"],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-theorem1"));
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_cbdiv");
    let args = ["certify", "D", "4", "--weights", "w1,w1,w3,w3,w4,w4", "--format", "json"];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(exe).args(["rank", "B", "2", "--weights", "w9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    let (_, inproc, _) = call(&args);
    assert_eq!(String::from_utf8(a.stdout).unwrap(), inproc);
}
