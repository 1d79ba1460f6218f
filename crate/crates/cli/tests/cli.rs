//! End-to-end checks of the command surface and its exit-code contract:
//! 0 on success/verified, 1 on identity mismatch, 2 on usage error.

use std::process::{Command, Output};

fn sumsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumsq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn tau_golden_value() {
    let out = sumsq(&["tau", "--n", "7", "--method", "eta"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-16744");
    let out = sumsq(&["tau", "--n", "5", "--method", "eq_1_29"]);
    assert_eq!(stdout(&out).trim(), "4830");
}

#[test]
fn rs_methods_and_check() {
    let out = sumsq(&["rs", "--s", "4", "--n", "1", "--method", "oracle"]);
    assert_eq!(stdout(&out).trim(), "8");
    let out = sumsq(&["rs", "--s", "24", "--n", "1", "--method", "formula"]);
    assert_eq!(stdout(&out).trim(), "48");
    let out = sumsq(&[
        "rs", "--s", "16", "--n", "3", "--method", "formula", "--check",
    ]);
    assert!(out.status.success());
    let out = sumsq(&["rs", "--s", "8", "--n", "6", "--method", "theta", "--check"]);
    assert!(out.status.success());
}

#[test]
fn series_text_and_json() {
    let out = sumsq(&[
        "series", "--name", "theta3", "--power", "4", "--order", "24",
    ]);
    assert_eq!(stdout(&out).trim(), "1,8,24,32,24,48");
    let out = sumsq(&[
        "series", "--name", "U", "--s", "1", "--order", "20", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["order_quarter"], 20);
    // json round-trips through the library parser
    let q = sumsq_core::qx::QX::from_json(&v).unwrap();
    assert_eq!(q.coeff_q(1), &sumsq_core::rat::rat_i(1));
}

#[test]
fn cfrac_levels() {
    let out = sumsq(&["cfrac", "--family", "sn", "--levels", "2"]);
    let text = stdout(&out);
    assert!(text.contains("n=2: alpha = 12K, beta = 9 + 9K"), "{text}");
    let out = sumsq(&["cfrac", "--family", "dc", "--levels", "3", "--reg"]);
    assert!(stdout(&out).contains("gamma_3 = -4"));
}

#[test]
fn verify_id_and_suite() {
    let out = sumsq(&["verify", "--id", "EQ_5_83", "--order", "120"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS"));
    let out = sumsq(&[
        "verify", "--suite", "s5_20_21", "--order", "80", "--jobs", "2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 10);
    // a parameterized suite runs each identity at exactly the given n
    let out = sumsq(&["verify", "--suite", "s5_19", "--n", "2", "--order", "80"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 24);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    // json report schema
    let out = sumsq(&[
        "verify", "--id", "EQ_5_83", "--order", "80", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["status"], "pass");
    // order can be given in integer q-units
    let out = sumsq(&["verify", "--id", "EQ_5_83", "--order-q", "20"]);
    assert!(out.status.success());
}

#[test]
fn exit_codes() {
    // 1: identity mismatch
    let out = sumsq(&["verify", "--id", "NEG_CONTROL", "--order", "80"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("FAIL"), "{text}");
    assert!(text.contains("first mismatch"));
    // 2: unknown id, unknown suite, bad flags
    let out = sumsq(&["verify", "--id", "BOGUS"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sumsq(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sumsq(&["rs", "--s", "10", "--n", "1", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sumsq(&["tau", "--n", "4", "--method", "eq_1_29"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn default_order_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_sumsq"))
        .args(["series", "--name", "theta3"])
        .env("SUMSQ_DEFAULT_ORDER", "8")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1,2");
}
