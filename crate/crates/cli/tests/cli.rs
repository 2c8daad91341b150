//! End-to-end checks of the binary: output shapes and exit-code semantics
//! (0 definitive, 2 unknown-within-bound, 1 error).

use std::process::{Command, Output};

fn pellsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pellsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn solve_reports_fundamental_and_order() {
    let out = pellsurf(&["--json", "solve", "--field", "Q", "--g", "u^4-1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "solved");
    assert_eq!(v["x"], "u^2");
    assert_eq!(v["y"], "1");
    assert_eq!(v["torsion_order"], 2);
    assert!(v["steps_used"].as_u64().is_some());
}

#[test]
fn structural_verdict_exits_zero() {
    let out = pellsurf(&["--json", "solve", "--field", "Q", "--g", "2*u^2-1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "structural");
    assert_eq!(v["reason"], "non_square_leading_coeff");
}

#[test]
fn unknown_verdict_exits_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_pellsurf"))
        .args(["--json", "solve", "--field", "Q", "--g", "u^4+u^2+u+1"])
        .env("PELLSURF_MAX_STEPS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "unknown");
}

#[test]
fn parse_errors_exit_one() {
    let out = pellsurf(&["solve", "--field", "Q", "--g", "u^2 ? 1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("position"), "{err}");

    let out = pellsurf(&["solve", "--field", "F9", "--g", "u^2-1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn subst_matches_composition() {
    let out = pellsurf(&[
        "--json", "subst", "--field", "Q", "--g", "u^2-1", "--q", "t^3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["report"], "equal");
    assert_eq!(v["x"], "t^3");
}

#[test]
fn lines_schema_matches_the_documented_fields() {
    let out = pellsurf(&[
        "--json", "lines", "--field", "Q", "--g", "u^2-1", "--n-max", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["complete"], true);
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 4 + 2 + 8);
    for line in lines {
        let kind = line["kind"].as_str().unwrap();
        assert!(["vertical", "trivial", "section"].contains(&kind));
        assert!(line["definition_field"].is_string());
        assert!(line["x"].is_string());
        if kind == "section" {
            assert!(line["n"].as_i64().is_some());
        }
    }
}

#[test]
fn ramify_json_profile() {
    let out = pellsurf(&["--json", "ramify", "--q", "t^3+t", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["total"], 4);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["place"], "infinity");
    assert_eq!(points[0]["tame"], false);

    // inseparable map: error, exit 1
    let out = pellsurf(&["ramify", "--q", "t^3", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_sweep_is_seed_reproducible() {
    let run = || {
        let out = pellsurf(&[
            "--json",
            "oracle",
            "--field",
            "F3",
            "--samples",
            "4",
            "--seed",
            "7",
            "--deg-bound",
            "6",
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    let a = run();
    let b = run();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(a.trim()).unwrap();
    assert_eq!(v["all_agree"], true);

    // sweeps without a seed are refused
    let out = pellsurf(&["oracle", "--field", "F3", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cheb_and_deg2_family() {
    let out = pellsurf(&["--json", "cheb", "--n", "3"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["T"], "4*t^3 - 3*t");
    assert_eq!(v["U"], "4*t^2 - 1");

    let out = pellsurf(&["--json", "deg2-family", "--field", "Q", "--c", "4"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["displayed_pair_valid"], false);
    assert_eq!(v["x"], "1/2*t^2 - 1");

    let out = pellsurf(&["--json", "deg2-family", "--field", "Q", "--c", "1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["displayed_pair_valid"], true);
}

#[test]
fn classify_and_places() {
    let out = pellsurf(&["--json", "classify", "--field", "Q", "--g", "u^4-1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["log_kodaira"], "1");

    let out = pellsurf(&["--json", "places", "--field", "Q", "--g", "u^3-u"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], 1);

    let out = pellsurf(&["--json", "places", "--field", "Q", "--g", "2*u^2-1"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["rational"], false);
}

#[test]
fn cyclotomic_orders_on_s2() {
    for (b, expect) in [("0", "4"), ("-1/2", "3"), ("1/2", "6")] {
        let out = pellsurf(&[
            "--json",
            "cyclotomic",
            "--field",
            "Q",
            "--g",
            "u^2-1",
            "--b",
            b,
            "--bound",
            "100",
        ]);
        assert_eq!(out.status.code(), Some(0), "b = {b}");
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(v["order"].to_string(), expect, "b = {b}");
    }
}
