use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use spin_entropy::bounds::joint_entropy;
use spin_entropy::geometry::{canonical_axes, PlanarFrame};
use spin_entropy::measurement::build_scheme;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spin-entropy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} = {}", v[key]))
}

/// Parses a CSV file into a header and rows of raw cells.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

fn cell(header: &[String], row: &[String], name: &str) -> Option<f64> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    match row[i].as_str() {
        "n/a" => None,
        s => Some(s.parse().unwrap()),
    }
}

#[test]
fn bounds_at_complementary_axes() {
    let eta = FRAC_PI_2.to_string();
    let r = stdout_json(&["bounds", "--eta", &eta, "--equal-sharpness", "--json"]);
    assert!((num(&r, "joint_bound_equal") - 1.5).abs() < 1e-12);
    assert!((num(&r, "numeric_min_marginal_sum") - 1.60088).abs() < 1e-5);
    assert_eq!(r["marginal_bound_equal"], "n/a");
    assert_eq!(r["gmr_bound"], "n/a");
}

#[test]
fn bounds_table_marks_inapplicable_values() {
    let out = run(&["bounds", "--eta", "90", "--degrees", "--equal-sharpness"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("gmr_bound")).unwrap();
    assert!(line.ends_with("n/a"), "{line}");
    assert!(text.contains("1.5\n"));
}

#[test]
fn bounds_vanish_for_parallel_axes() {
    let r = stdout_json(&["bounds", "--eta", "0", "--alpha", "1", "--json"]);
    for key in [
        "joint_bound_equal",
        "joint_bound_general",
        "marginal_bound_equal",
        "concavity_bound",
        "kp_bound",
        "gmr_bound",
        "numeric_min_joint",
        "numeric_min_marginal_sum",
    ] {
        assert!(num(&r, key).abs() < 1e-12, "{key}");
    }
}

#[test]
fn kp_bound_below_general_bound() {
    let r = stdout_json(&["bounds", "--eta", "1.2", "--alpha", "0.9", "--json"]);
    assert!(num(&r, "kp_bound") <= num(&r, "joint_bound_general") + 1e-9);
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        vec!["bounds", "--eta", "4", "--alpha", "0.5"],
        vec!["bounds", "--eta", "1", "--alpha", "1.5"],
        vec!["bounds", "--eta", "1", "--alpha", "0.9", "--beta", "0.9"],
        vec!["bounds", "--eta", "1"],
        vec!["sweep", "--eta-min", "2", "--eta-max", "1"],
        vec!["sweep", "--eta-steps", "1"],
        vec!["eta-prime", "--alpha-rule", "fixed:2"],
        vec![
            "sample", "--eta", "1", "--alpha", "1", "--theta", "0", "--shots", "0",
        ],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let out = bin()
        .args(["eta-prime"])
        .env("THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_nonzero() {
    let out = run(&[
        "sweep",
        "--eta-steps",
        "3",
        "--out",
        "/nonexistent-dir/x.csv",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn equal_sharpness_sweep_orders_curves() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.csv");
    let out = run(&[
        "sweep",
        "--eta-steps",
        "37",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (header, rows) = read_csv(&path);
    assert_eq!(rows.len(), 37);
    let mut prev_eta = -1.0;
    for row in &rows {
        for (h, c) in header.iter().zip(row) {
            if h != "min_thetas" && c != "n/a" {
                assert!(c.parse::<f64>().unwrap().is_finite(), "{h} = {c}");
            }
        }
        let eta = cell(&header, row, "eta").unwrap();
        assert!(eta > prev_eta);
        prev_eta = eta;
        let marg = cell(&header, row, "numeric_min_marginal_sum").unwrap();
        let joint = cell(&header, row, "numeric_min_joint").unwrap();
        let sep = cell(&header, row, "numeric_min_separate").unwrap();
        assert!(marg >= joint && joint >= 0.0, "eta {eta}");
        assert!(joint >= sep, "eta {eta}");
        // The joint curve is tight everywhere.
        let bound = cell(&header, row, "joint_bound_equal").unwrap();
        assert!((bound - joint).abs() < 1e-9, "eta {eta}");
    }
}

#[test]
fn general_bound_peaks_at_right_angle_for_each_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = run(&[
        "sweep",
        "--alpha-rule",
        "max-beta-given-alpha",
        "--alpha-steps",
        "11",
        "--eta-steps",
        "25",
        "--outputs",
        "joint_bound_general",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (header, rows) = read_csv(&path);
    assert_eq!(rows.len(), 11 * 25);
    for block in rows.chunks(25) {
        let values: Vec<f64> = block
            .iter()
            .map(|r| cell(&header, r, "joint_bound_general").unwrap())
            .collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // Index 12 is eta = pi/2; flat rows may tie.
        assert!(
            values[12] >= max - 1e-12,
            "alpha {:?}: {values:?}",
            block[0][1]
        );
    }
}

#[test]
fn sweep_is_independent_of_thread_count() {
    let args = ["sweep", "--eta-steps", "17", "--alpha-rule", "fixed:0.8"];
    let a = bin().args(args).env("THREADS", "1").output().unwrap();
    let b = bin().args(args).env("THREADS", "4").output().unwrap();
    let c = bin().arg("--sequential").args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn eta_prime_equal_sharpness() {
    let r = stdout_json(&["eta-prime", "--json"]);
    assert!((num(&r, "eta_prime") - 1.46117).abs() < 1e-4);
    let text = String::from_utf8(run(&["eta-prime"]).stdout).unwrap();
    assert!(text.contains("1.461168"), "{text}");
}

#[test]
fn eta_prime_sharp_rule_reports_reference() {
    let r = stdout_json(&["eta-prime", "--alpha-rule", "fixed:1", "--json"]);
    assert_eq!(num(&r, "reference"), 1.17056);
    assert!(num(&r, "difference").abs() < 1e-5);
    let text = String::from_utf8(run(&["eta-prime", "--alpha-rule", "fixed:1"]).stdout).unwrap();
    assert!(text.contains("1.17056"));
}

#[test]
fn eta_prime_half_sharpness_has_sign_change() {
    let r = stdout_json(&["eta-prime", "--alpha-rule", "fixed:0.5", "--json"]);
    let eta = num(&r, "eta_prime");
    assert!(eta > 0.0 && eta < std::f64::consts::PI);
    assert!(num(&r, "second_derivative_lo") * num(&r, "second_derivative_hi") < 0.0);
}

#[test]
fn sample_is_reproducible_and_consistent() {
    let dir = tempfile::tempdir().unwrap();
    let eta = FRAC_PI_2.to_string();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for (p, threads) in paths.iter().zip(["1", "3"]) {
        let out = bin()
            .args(["sample", "--eta", &eta, "--equal-sharpness", "--theta", "0"])
            .args([
                "--shots",
                "1000000",
                "--seed",
                "17",
                "--out",
                p.to_str().unwrap(),
            ])
            .env("THREADS", threads)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let bytes = std::fs::read(&paths[0]).unwrap();
    assert_eq!(bytes, std::fs::read(&paths[1]).unwrap());

    let r: Value = serde_json::from_slice(&bytes).unwrap();
    let alpha_hat = r["estimates"]["alpha_hat"].as_f64().unwrap();
    let se = r["estimates"]["alpha_standard_error"].as_f64().unwrap();
    assert!((alpha_hat - FRAC_1_SQRT_2).abs() <= 5.0 * se);
    assert_eq!(r["estimates"]["beta_hat"], "n/a");

    let (a, b) = canonical_axes(FRAC_PI_2);
    let scheme = build_scheme(a, b, FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
    let state = PlanarFrame::new(a, b).unwrap().state(0.0);
    let analytic = r["analytic"]["joint_entropy"].as_f64().unwrap();
    assert!((analytic - joint_entropy(&scheme, &state)).abs() <= 1e-12);
    let counts = &r["empirical"]["counts"];
    let total: u64 = ["pp", "pm", "mp", "mm"]
        .iter()
        .map(|k| counts[k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 1_000_000);
}

#[test]
fn minimize_plane_and_sphere_agree() {
    let args = [
        "--eta",
        "1.3",
        "--alpha",
        "0.8",
        "--objective",
        "joint",
        "--json",
    ];
    let plane = stdout_json(&[&["minimize"], &args[..]].concat());
    let sphere = stdout_json(&[&["minimize", "--sphere"], &args[..]].concat());
    assert!((num(&plane, "value") - num(&sphere, "value")).abs() < 1e-6);
    assert_eq!(plane["phi_star"], "n/a");
}

#[test]
fn every_subcommand_has_help() {
    for sub in ["bounds", "sweep", "eta-prime", "sample", "minimize"] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success(), "{sub}");
    }
}
