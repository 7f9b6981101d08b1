//! The `pionless-qre` binary: flags, exit codes and output stability.

use assert_cmd::Command;
use pionless_qre::log_log_slope;

fn qre() -> Command {
    let mut c = Command::cargo_bin("pionless-qre").unwrap();
    c.env_remove("PIONLESS_QRE_PARAMS");
    c
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = qre()
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    serde_json::from_slice(&out).unwrap()
}

#[test]
fn estimate_examples() {
    let q = json(&[
        "estimate",
        "--method",
        "qsp",
        "--eta",
        "16",
        "--m",
        "3",
        "--d",
        "3",
        "--eps",
        "0.1",
        "--time",
        "cross:10MeV",
    ]);
    assert_eq!(q["qubits"]["total"], 212);
    assert_eq!(q["R"], 26817);
    assert_eq!(q["t_count"], 100335026u64);
    assert_eq!(q["t_count_sci"], "1.003e8");
    assert_eq!(q["accounting"]["kickback"], "8b");
    assert_eq!(q["time"]["model"], "crossing");
    let t = json(&[
        "estimate",
        "--method",
        "trotter2",
        "--eta",
        "40",
        "--time",
        "cross:10MeV",
    ]);
    assert_eq!(t["qubits"]["total"], 427);
    assert_eq!(t["r"], 21962);
    let sum: i64 = t["breakdown"]
        .as_object()
        .unwrap()
        .values()
        .map(|v| v.as_i64().unwrap())
        .sum();
    assert_eq!(sum as u64, t["t_count"].as_u64().unwrap());
}

#[test]
fn large_counts_stay_exact() {
    let v = json(&[
        "estimate", "--method", "trotter1", "--eta", "128", "--m", "8",
    ]);
    let exact = v["t_count"].as_u64().expect("integer count");
    assert!(exact > 1 << 53, "{exact}");
    let sci: f64 = v["t_count_sci"].as_str().unwrap().parse().unwrap();
    assert!((sci / exact as f64 - 1.0).abs() < 1e-3);
}

#[test]
fn precondition_errors_exit_two() {
    let out = qre()
        .args(["estimate", "--method", "qsp", "--eta", "16", "--eps", "0"])
        .assert()
        .code(2)
        .get_output()
        .stderr
        .clone();
    assert!(String::from_utf8(out).unwrap().contains("eps"));
    qre()
        .args(["estimate", "--method", "qsp", "--eta", "0"])
        .assert()
        .code(2);
    qre()
        .args(["estimate", "--method", "bogus", "--eta", "4"])
        .assert()
        .code(2);
    qre()
        .args([
            "estimate", "--method", "qsp", "--eta", "4", "--time", "cross:-1",
        ])
        .assert()
        .code(2);
    qre()
        .args(["sweep", "--axis", "eta", "--range", "9..3"])
        .assert()
        .code(2);
}

#[test]
fn negative_mass_is_refused_before_verification() {
    let dir = std::env::temp_dir().join(format!("pionless-qre-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.cfg");
    std::fs::write(&cfg, "mu_mev = -939\n").unwrap();
    let out = qre()
        .args(["verify", "umatch"])
        .env("PIONLESS_QRE_PARAMS", &cfg)
        .assert()
        .code(2)
        .get_output()
        .clone();
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr).unwrap().contains("mu_mev"));
    qre()
        .args([
            "--params",
            cfg.to_str().unwrap(),
            "estimate",
            "--method",
            "qsp",
            "--eta",
            "2",
        ])
        .assert()
        .code(2);
}

#[test]
fn parameter_file_changes_results() {
    let dir = std::env::temp_dir().join(format!("pionless-qre-p-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("free.cfg");
    std::fs::write(&cfg, "# no interactions\nc_mev = 0\ng_mev = 0\n").unwrap();
    let v = json(&[
        "--params",
        cfg.to_str().unwrap(),
        "estimate",
        "--method",
        "qsp",
        "--eta",
        "4",
    ]);
    assert_eq!(v["lambda"]["V"], 0.0);
}

#[test]
fn verify_filter_runs_only_matching_cases() {
    let v = json(&["verify", "umatch"]);
    let cases = v["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    assert!(cases
        .iter()
        .all(|c| c["name"].as_str().unwrap().contains("umatch")));
    assert_eq!(v["failed"], 0);
    qre().args(["verify", "no-such-case"]).assert().code(1);
}

#[test]
fn sweeps_are_byte_identical_and_monotone() {
    let args = [
        "sweep",
        "--axis",
        "eta",
        "--range",
        "4..64",
        "--step",
        "4",
        "--methods",
        "trotter2,qsp",
    ];
    let a = qre()
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let b = qre()
        .args(args)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("# schema=1\n"));
    assert!(text.contains("# kickback_constant=8b\n"));
    let rows: Vec<Vec<&str>> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("method"))
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 32);
    for method in ["trotter2", "qsp"] {
        let counts: Vec<u128> = rows
            .iter()
            .filter(|r| r[0] == method)
            .map(|r| r[3].parse().unwrap())
            .collect();
        assert!(
            counts.windows(2).all(|w| w[0] <= w[1]),
            "{method}: {counts:?}"
        );
    }
    let j = qre()
        .args([
            "sweep", "--axis", "eta", "--range", "4..8", "--format", "json",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let doc: serde_json::Value = serde_json::from_slice(&j).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 10);
}

#[test]
fn failed_points_become_error_rows() {
    let out = qre()
        .args([
            "sweep",
            "--axis",
            "eta",
            "--range",
            "1..3",
            "--methods",
            "qsp",
            "--m",
            "1",
            "--d",
            "1",
            "--params",
            "/dev/null",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("qsp,")).count(), 3);
    let out = qre()
        .args([
            "sweep",
            "--axis",
            "eta",
            "--range",
            "7..9",
            "--methods",
            "qsp",
            "--m",
            "1",
            "--d",
            "1",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let last = text.lines().last().unwrap();
    assert!(
        last.starts_with("qsp,eta,9,,") && last.contains("eta"),
        "{last}"
    );
}

#[test]
fn crossing_time_m_sweep_follows_cube_root_of_basis_size() {
    let out = qre()
        .args([
            "sweep",
            "--axis",
            "m",
            "--range",
            "3..12",
            "--methods",
            "qsp",
            "--eta",
            "16",
            "--time",
            "cross:10MeV",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let text = String::from_utf8(out).unwrap();
    let pts: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| l.starts_with("qsp,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            let m: i32 = f[2].parse().unwrap();
            (4.0 * 2f64.powi(3 * m), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), 10);
    let slope = log_log_slope(&pts);
    assert!((0.25..=0.45).contains(&slope), "{slope}");
}

#[test]
fn response_time_m_sweep_stays_within_factor_ten() {
    let out = qre()
        .args([
            "sweep",
            "--axis",
            "m",
            "--range",
            "3..12",
            "--methods",
            "qsp",
            "--time",
            "response:100MeV",
            "--format",
            "json",
        ])
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    let counts: Vec<f64> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["estimate"]["t_count"].as_f64().unwrap())
        .collect();
    let (lo, hi) = counts
        .iter()
        .fold((f64::MAX, 0.0f64), |(a, b), c| (a.min(*c), b.max(*c)));
    assert!(hi / lo < 10.0, "{counts:?}");
}
