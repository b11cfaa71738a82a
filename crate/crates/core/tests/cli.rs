use std::process::{Command, Output};

use serde_json::Value;

fn secretary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secretary"))
        .args(args)
        .env_remove("SECRETARY_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = secretary(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn exact_values() {
    let v = json(&["exact", "--n", "3", "--m", "1", "--q", "0.5"]);
    assert_eq!(v["schema"], 1);
    assert!((v["probability"].as_f64().unwrap() - 0.476_190_476_190_476).abs() < 1e-14);

    let v = json(&["exact", "--n", "1", "--m", "0", "--q", "0.9"]);
    assert_eq!(v["probability"].as_f64().unwrap(), 1.0);

    let v = json(&["exact", "--n", "2", "--m", "1", "--q", "0.5"]);
    assert!((v["probability"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn exact_uniform_route() {
    let v = json(&["exact", "--n", "4", "--m", "1", "--q", "1"]);
    assert!((v["probability"].as_f64().unwrap() - 11.0 / 24.0).abs() < 1e-15);
}

#[test]
fn printed_floats_round_trip_bit_exactly() {
    let v = json(&["exact", "--n", "37", "--m", "11", "--q", "0.8123"]);
    let printed = v["probability"].as_f64().unwrap();
    let computed = secretary_mallows::policy::success_probability_exact(37, 11, 0.8123)
        .unwrap()
        .value;
    assert_eq!(printed.to_bits(), computed.to_bits());
}

#[test]
fn optimal_two_items() {
    let v = json(&["optimal", "--n", "2", "--q", "0.5"]);
    assert_eq!(v["m_star"], 1);
    assert!((v["p_star"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn predict_regimes() {
    let v = json(&["predict", "--regime", "strong", "--q", "0.5", "--n", "100"]);
    assert_eq!(v["regime"], "strong");
    assert_eq!(v["m_star"], 99);
    assert_eq!(v["p_limit"].as_f64().unwrap(), 0.5);

    let v = json(&["predict", "--regime", "weak", "--c", "1", "--n", "10000"]);
    assert_eq!(v["m_star"], 4899);
    assert_eq!(v["q"].as_f64().unwrap(), 0.9999);

    let v = json(&["predict", "--regime", "moderate", "--c", "1", "--alpha", "0.5", "--n", "10000"]);
    let m = v["m_star"].as_u64().unwrap();
    assert!(m == 9900 || m == 9901);
    assert_eq!(v["alpha"].as_f64().unwrap(), 0.5);
}

#[test]
fn predict_missing_parameter_is_usage_error() {
    let out = secretary(&["predict", "--regime", "moderate", "--c", "1", "--n", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "usage");
}

#[test]
fn simulate_record() {
    let v = json(&[
        "simulate", "--n", "10", "--m", "3", "--q", "0.7", "--samples", "20000", "--seed", "5",
        "--workers", "3",
    ]);
    for key in ["estimate", "std_error", "probability", "samples", "seed", "workers"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["seed"], 5);
    assert_eq!(v["workers"], 3);
    let (est, se, exact) = (
        v["estimate"].as_f64().unwrap(),
        v["std_error"].as_f64().unwrap(),
        v["probability"].as_f64().unwrap(),
    );
    assert!((est - exact).abs() < 4.0 * se);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_secretary"));
        cmd.args(["sample", "--n", "8", "--q", "0.6", "--count", "5"]).args(extra);
        match env {
            Some(s) => cmd.env("SECRETARY_SEED", s),
            None => cmd.env_remove("SECRETARY_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("77"), &[]), run(None, &["--seed", "77"]));
    assert_ne!(run(Some("77"), &[]), run(Some("78"), &[]));
}

#[test]
fn sample_is_byte_identical_and_well_formed() {
    let args = ["sample", "--n", "12", "--q", "0.8", "--count", "50", "--seed", "9"];
    let a = secretary(&args);
    let b = secretary(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 50);
    for line in lines {
        let ranks: Vec<usize> = line.split(' ').map(|t| t.parse().unwrap()).collect();
        assert!(secretary_mallows::Permutation::new(ranks).is_ok(), "{line}");
    }
}

#[test]
fn sweep_m_argmax_matches_optimal() {
    let out = secretary(&["sweep", "--variable", "m", "--n", "50", "--q", "0.8"]);
    assert!(out.status.success());
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["n", "m", "q", "c", "probability", "m_star", "p_star"]
    );
    let rows: Vec<(usize, f64)> = reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[1].parse().unwrap(), r[4].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 50);
    let (argmax, best) = rows
        .iter()
        .copied()
        .fold((0, f64::NEG_INFINITY), |acc, r| if r.1 > acc.1 { r } else { acc });
    let opt = json(&["optimal", "--n", "50", "--q", "0.8"]);
    assert_eq!(opt["m_star"].as_u64().unwrap() as usize, argmax);
    assert_eq!(opt["p_star"].as_f64().unwrap(), best);
}

#[test]
fn sweep_q_json() {
    let v = json(&[
        "sweep", "--variable", "q", "--n", "30", "--start", "0.5", "--stop", "0.9", "--steps", "5",
        "--m", "20", "--format", "json",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert_eq!(row["schema"], 1);
        assert_eq!(row["m"], 20);
        assert!(row["c"].is_null());
        assert!(row["p_star"].as_f64().unwrap() >= row["probability"].as_f64().unwrap());
    }
    assert_eq!(rows[4]["q"].as_f64().unwrap(), 0.9);
}

#[test]
fn sweep_c_uses_weak_regime() {
    let v = json(&["sweep", "--variable", "c", "--n", "1000", "--values", "0.5,1,2", "--format", "json"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1]["q"].as_f64().unwrap(), 0.999);
    assert_eq!(rows[1]["c"].as_f64().unwrap(), 1.0);
}

#[test]
fn sweep_n_needs_q_or_c() {
    let out = secretary(&["sweep", "--variable", "n", "--values", "10,20"]);
    assert_eq!(out.status.code(), Some(1));
    let ok = secretary(&["sweep", "--variable", "n", "--values", "10,20", "--q", "0.7"]);
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 3);
}

#[test]
fn domain_errors_exit_one_with_json_line() {
    for args in [
        &["exact", "--n", "3", "--m", "3", "--q", "0.5"][..],
        &["exact", "--n", "3", "--m", "1", "--q", "1.5"],
        &["optimal", "--n", "0", "--q", "0.5"],
        &["predict", "--regime", "strong", "--q", "1", "--n", "10"],
        &["sweep", "--variable", "m", "--n", "5", "--q", "0.5", "--values", "1.5"],
    ] {
        let out = secretary(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        let stderr = String::from_utf8(out.stderr).unwrap();
        assert_eq!(stderr.lines().count(), 1, "{stderr}");
        let err: Value = serde_json::from_str(&stderr).unwrap();
        assert_eq!(err["schema"], 1);
        assert_eq!(err["error"], "domain", "{args:?}");
    }
}

#[test]
fn unknown_flag_is_rejected() {
    let out = secretary(&["exact", "--n", "3", "--m", "1", "--q", "0.5", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "usage");
}

#[test]
fn help_mentions_uniform_routing() {
    let out = secretary(&["exact", "--help"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("(0, 1]"));
}
