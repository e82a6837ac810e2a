use assert_cmd::Command;
use num_bigint::BigInt;
use predicates::prelude::*;
use serde_json::Value;
use zred::reduction::enumerate_z_reduced;
use zred_cli::{run, Outcome, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn zred(args: &[&str]) -> Outcome {
    run(std::iter::once("zred").chain(args.iter().copied()))
}

fn stdout_of(args: &[&str]) -> String {
    let out = zred(args);
    assert_eq!(out.code, 0, "zred {args:?} failed: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

fn json_of(args: &[&str]) -> Value {
    let mut v = vec!["--json"];
    v.extend_from_slice(args);
    serde_json::from_str(&stdout_of(&v)).unwrap()
}

#[test]
fn binary_prints_worked_examples() {
    Command::cargo_bin("zred")
        .unwrap()
        .args(["sigma", "1", "5", "2"])
        .assert()
        .success()
        .stdout("10011\n");
    Command::cargo_bin("zred")
        .unwrap()
        .args(["gamma", "1", "3", "-2"])
        .assert()
        .success()
        .stdout("3,1,1\n");
    Command::cargo_bin("zred")
        .unwrap()
        .args(["gamma", "--", "1", "3", "-2"])
        .assert()
        .success()
        .stdout("3,1,1\n");
}

#[test]
fn binary_exit_codes() {
    Command::cargo_bin("zred")
        .unwrap()
        .arg("frobnicate")
        .assert()
        .code(2);
    Command::cargo_bin("zred")
        .unwrap()
        .args(["beta", "1", "2x", "3"])
        .assert()
        .code(2);
    Command::cargo_bin("zred")
        .unwrap()
        .args(["beta", "1", "3", "-2"])
        .assert()
        .code(3)
        .stderr(predicates::str::contains("not Z-reduced"));
}

#[test]
fn verify_all_small_bound_exits_zero() {
    Command::cargo_bin("zred")
        .unwrap()
        .args(["verify", "--suite", "all", "--delta-max", "300"])
        .env("ZRED_JOBS", "2")
        .assert()
        .success()
        .stdout(predicates::str::contains("PASS rotation"))
        .stdout(predicates::str::contains("FAIL").not());
}

#[test]
fn verify_json_report_shape() {
    let v = json_of(&["verify", "--suite", "weightparity", "--delta-max", "100"]);
    let r = &v[0];
    assert_eq!(r["theorem_id"], "weightparity");
    assert_eq!(r["delta_range"], serde_json::json!([1, 100]));
    assert!(r["cases_checked"].as_u64().unwrap() > 0);
    assert_eq!(r["failures"], serde_json::json!([]));

    let empty = json_of(&["verify", "--suite", "formfrombeads", "--delta-max", "0"]);
    assert_eq!(empty[0]["cases_checked"], 0);
}

#[test]
fn verify_rejects_unknown_suite() {
    assert_eq!(
        zred(&["verify", "--suite", "nope", "--delta-max", "10"]).code,
        EXIT_USAGE
    );
    // 1 is reserved for a completed run with failures.
    assert_ne!(EXIT_VERIFY_FAILED, EXIT_USAGE);
}

#[test]
fn json_shapes() {
    assert_eq!(
        json_of(&["mu", "1", "3", "-2"]),
        serde_json::json!(["1", "5", "2"])
    );
    assert_eq!(
        json_of(&["beta", "1", "5", "2"]),
        serde_json::json!([1, 3, 1, 1])
    );
    assert_eq!(
        json_of(&["sigma", "1", "5", "2"]),
        serde_json::json!("10011")
    );
    assert_eq!(
        json_of(&["denjoy-period", "1", "5", "2"]),
        serde_json::json!("1010111")
    );
    assert_eq!(
        json_of(&["pell", "8"]),
        serde_json::json!({"t": "2", "u": "1", "epsilon": -4})
    );
    assert_eq!(json_of(&["caliber", "1", "5", "2"])["caliber"], 5);
    let orbit = json_of(&["reduce", "--op", "z", "1", "5", "2"]);
    assert_eq!(orbit["pre_period"], serde_json::json!([]));
    assert_eq!(orbit["cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn pell_is_json_in_text_mode() {
    let v: Value = serde_json::from_str(&stdout_of(&["pell", "13"])).unwrap();
    assert_eq!(v, serde_json::json!({"t": "3", "u": "1", "epsilon": -4}));
}

#[test]
fn continued_fractions() {
    assert_eq!(stdout_of(&["cf", "17/5", "--parity", "odd"]), "3,2,2");
    assert_eq!(stdout_of(&["cf", "17/5", "--parity", "even"]), "3,2,1,1");
    assert_eq!(
        zred(&["cf", "5/17", "--parity", "odd"]).code,
        EXIT_PRECONDITION
    );
    assert_eq!(zred(&["cf", "17:5", "--parity", "odd"]).code, EXIT_USAGE);
    assert_eq!(zred(&["cf", "17/5", "--parity", "both"]).code, EXIT_USAGE);

    let surd = |kind: &str, terms: &str| {
        stdout_of(&[
            "surd-cf", "--p", "3", "--q", "2", "--delta", "17", "--kind", kind, "--terms", terms,
        ])
    };
    assert_eq!(surd("denjoy", "7"), "1010111");
    assert_eq!(surd("reg", "4"), "3,1,1,3");
    assert_eq!(surd("reg", "0"), "");
    assert_eq!(
        stdout_of(&[
            "surd-cf", "--p", "-1", "--q", "2", "--delta", "5", "--kind", "reg", "--terms", "3"
        ]),
        "0,1,1"
    );
    assert_eq!(
        zred(&[
            "surd-cf", "--p", "-3", "--q", "2", "--delta", "5", "--kind", "reg", "--terms", "3"
        ])
        .code,
        EXIT_PRECONDITION
    );
}

#[test]
fn reduce_and_cycles_text() {
    assert_eq!(
        stdout_of(&["reduce", "1", "5", "2"]),
        "pre-period:\ncycle:\n  1 5 2\n  2 5 1\n  4 7 2\n  4 9 4\n  2 7 4"
    );
    assert_eq!(
        stdout_of(&["cycles", "--delta", "17", "--op", "z"]),
        "1 5 2; 2 5 1; 4 7 2; 4 9 4; 2 7 4"
    );
    assert_eq!(
        zred(&["reduce", "--op", "g", "1", "5", "2"]).code,
        EXIT_PRECONDITION
    );
    assert_eq!(zred(&["cycles", "--delta", "16"]).code, EXIT_PRECONDITION);
}

#[test]
fn string_maps() {
    assert_eq!(stdout_of(&["xi", "3,1,1"]), "2 6 -4");
    assert_eq!(stdout_of(&["tau", "1,3"]), "1 5 3");
    assert_eq!(zred(&["tau", "1,,3"]).code, EXIT_USAGE);
    assert_eq!(zred(&["tau", "1"]).code, EXIT_PRECONDITION);
}

/// `tau $(beta A B C)` reprints `A B C` whenever `Δ = k² ± 4`.
#[test]
fn tau_inverts_beta_on_pell_discriminants() {
    let mut checked = 0;
    for k in 1..=15i64 {
        for delta in [k * k - 4, k * k + 4] {
            if delta <= 4 {
                continue;
            }
            for f in enumerate_z_reduced(&BigInt::from(delta)).unwrap() {
                let (a, b, c) = (f.a.to_string(), f.b.to_string(), f.c.to_string());
                let beads = stdout_of(&["beta", &a, &b, &c]);
                assert_eq!(stdout_of(&["tau", &beads]), format!("{a} {b} {c}"));
                checked += 1;
            }
        }
    }
    assert!(checked > 100);

    let beads = Command::cargo_bin("zred")
        .unwrap()
        .args(["beta", "3", "9", "5"])
        .output()
        .unwrap()
        .stdout;
    let beads = String::from_utf8(beads).unwrap();
    Command::cargo_bin("zred")
        .unwrap()
        .args(["tau", beads.trim()])
        .assert()
        .success()
        .stdout("3 9 5\n");
}
