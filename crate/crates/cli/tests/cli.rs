use std::path::Path;
use std::process::{Command, Output};

use mrspec_core::golden::parse_table_csv;
use mrspec_core::{check_bound_state, energy_level_for_l, PotentialParams};
use serde_json::Value;

fn mrspec(args: &[&str]) -> Output {
    mrspec_with_config(args, None)
}

fn mrspec_with_config(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mrspec"));
    cmd.args(args).env_remove("MRSPEC_CONFIG");
    if let Some(path) = config {
        cmd.env("MRSPEC_CONFIG", path);
    }
    cmd.output().expect("binary should run")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout should be JSON")
}

#[test]
fn energy_for_table_two_ground_state() {
    let out = mrspec(&[
        "energy",
        "--A",
        "80",
        "--alpha",
        "1",
        "--b",
        "40",
        "--beta",
        "0",
        "--beta-prime",
        "0",
        "--m",
        "0",
        "--N",
        "0",
        "--nr",
        "0",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert!((v["E"].as_f64().unwrap() + 0.487578).abs() < 5e-7);
    for key in ["u", "zeta", "lambda", "Lambda", "sqrt_c", "eps_sq"] {
        assert!(v[key].is_number(), "{key} missing");
    }
    assert_eq!(v["l_source"], "computed");
}

#[test]
fn energy_with_explicit_l() {
    let out = mrspec(&["energy", "--A", "80", "--alpha", "1", "--b", "40", "--l", "1", "--nr", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!((v["E"].as_f64().unwrap() + 0.112760).abs() < 5e-7);
    assert_eq!(v["l_source"], "explicit");
    assert!(v["zeta"].is_null());
}

#[test]
fn energy_constraint_violations_exit_one() {
    let shallow = mrspec(&["energy", "--A", "0.1", "--alpha", "1", "--b", "40", "--l", "2", "--nr", "0"]);
    assert_eq!(code(&shallow), 1);
    assert!(stderr(&shallow).contains("depth condition"), "{}", stderr(&shallow));

    let imaginary = mrspec(&["energy", "--beta", "3", "--beta-prime", "1", "--m", "1"]);
    assert_eq!(code(&imaginary), 1);
    assert!(stderr(&imaginary).contains("reality condition"));

    let too_many_nodes = mrspec(&["energy", "--nr", "8"]);
    assert_eq!(code(&too_many_nodes), 1);
}

#[test]
fn golden_tables_are_deterministic_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    for alpha in ["0.75", "1"] {
        let a = dir.path().join(format!("a{alpha}.csv"));
        let b = dir.path().join(format!("b{alpha}.csv"));
        for p in [&a, &b] {
            let out = mrspec(&["table", "--alpha", alpha, "--golden", "--output", p.to_str().unwrap()]);
            assert_eq!(code(&out), 0, "{}", stderr(&out));
        }
        let text = std::fs::read(&a).unwrap();
        assert_eq!(text, std::fs::read(&b).unwrap());
        let text = String::from_utf8(text).unwrap();
        assert!(text.starts_with("beta,beta_prime,m,N,n_r,l,n,E,l_source\n"));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 40);
        let override_row =
            text.lines().find(|l| l.starts_with("1.000000,1.000000,0,0,0,")).expect("β = β' = 1, m = 0 row");
        assert!(override_row.ends_with(",table_override"));
    }
}

#[test]
fn table_csv_round_trips_through_the_energy_formula() {
    for (alpha, golden) in [("0.75", true), ("1", true), ("0.3", false), ("1", false)] {
        let mut args = vec!["table", "--alpha", alpha];
        if golden {
            args.push("--golden");
        }
        let out = mrspec(&args);
        assert_eq!(code(&out), 0);
        let records = parse_table_csv(&stdout(&out)).unwrap();
        assert!(!records.is_empty());
        let p = PotentialParams::new(80.0, alpha.parse().unwrap(), 40.0).unwrap();
        let mut last = f64::NEG_INFINITY;
        for r in &records {
            let e = energy_level_for_l(&p, r.l, r.n_r).unwrap().energy;
            assert!((e - r.energy).abs() <= 5e-6, "{r:?}");
            assert!((r.n - (r.n_r as f64 + r.l + 1.0)).abs() <= 2e-6);
            assert!(r.energy >= last);
            last = r.energy;
            if !golden {
                assert!(check_bound_state(&p, r.l * (r.l + 1.0), r.n_r).is_bound());
            }
        }
    }
}

#[test]
fn golden_without_reference_alpha_is_rejected() {
    let out = mrspec(&["table", "--alpha", "0.3", "--golden"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "beta,beta_prime,m,N,n_r,l,n,E\n0,0,zero,0,0,0,1,-0.487578\n").unwrap();
    let out = mrspec(&["verify", "--golden-file", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("schema"));

    let wrong_header = dir.path().join("header.csv");
    std::fs::write(&wrong_header, "a,b\n1,2\n").unwrap();
    assert_eq!(code(&mrspec(&["table", "--golden-file", wrong_header.to_str().unwrap()])), 2);

    let missing = dir.path().join("missing.csv");
    assert_eq!(code(&mrspec(&["verify", "--golden-file", missing.to_str().unwrap()])), 2);

    let unwritable = dir.path().join("no/such/dir/out.csv");
    assert_eq!(code(&mrspec(&["table", "--output", unwritable.to_str().unwrap()])), 2);
}

#[test]
fn config_file_sits_between_defaults_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("mrspec.toml");
    std::fs::write(&cfg, "alpha = 0.75\nnr = 0\n").unwrap();
    let from_file = mrspec_with_config(&["energy"], Some(&cfg));
    assert!((json(&from_file)["E"].as_f64().unwrap() + 0.872300).abs() < 5e-7);
    let flag_wins = mrspec_with_config(&["energy", "--alpha", "1"], Some(&cfg));
    assert!((json(&flag_wins)["E"].as_f64().unwrap() + 0.487578).abs() < 5e-7);

    std::fs::write(&cfg, "alpah = 0.75\n").unwrap();
    assert_eq!(code(&mrspec_with_config(&["energy"], Some(&cfg))), 2);
}

#[test]
fn hulthen_convention_sets_strength_from_range() {
    let out = mrspec(&["energy", "--hulthen-convention", "--b", "40", "--l", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["params"]["A"].as_f64(), Some(80.0));
}

#[test]
fn approximation_figure_data() {
    let out = mrspec(&["figures", "--which", "approx", "--b", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,exact,improved,conventional"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 500);
    assert!((rows[0][0] - 0.05).abs() < 1e-12 && (rows[499][0] - 6.0).abs() < 1e-12);
    for row in &rows {
        let (r, exact, improved, conventional) = (row[0], row[1], row[2], row[3]);
        assert!((exact - 1.0 / (r * r)).abs() <= 1e-7 * exact.max(1.0));
        assert!((improved - conventional - 1.0 / 12.0).abs() < 2e-9);
        if r <= 1.0 {
            assert!((improved - exact).abs() < (conventional - exact).abs());
        }
    }
}

#[test]
fn region_figure_data() {
    let out = mrspec(&["figures", "--which", "region", "--alpha", "1"]);
    assert_eq!(code(&out), 0);
    let pairs: Vec<(u32, u32)> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[1].parse().unwrap())
        })
        .collect();
    assert!(pairs.contains(&(0, 0)));
    assert!(pairs.contains(&(7, 0)) && !pairs.contains(&(8, 0)));

    let cmp = mrspec(&["figures", "--which", "region", "--alpha", "0.75", "--compare-alpha", "1"]);
    assert_eq!(code(&cmp), 0);
    assert!(stderr(&cmp).contains("only at alpha = 1: []"), "{}", stderr(&cmp));
}

#[test]
fn verify_default_run_passes() {
    let out = mrspec(&["verify"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 39);
    assert!(v["summary"]["max_delta"].as_f64().unwrap() <= 1e-5);
    assert_eq!(v["summary"]["failures"], 0);
    let row = &v["rows"][0];
    for key in ["inputs", "analytic_E", "oracle_E", "delta", "norm_check", "nodes_ok"] {
        assert!(!row[key].is_null(), "{key}");
    }
    assert!(!v["summary"]["table_overrides"].as_array().unwrap().is_empty());
    assert!(stderr(&out).contains("failures = 0"));
}

#[test]
fn verify_exact_mode_reports_shifts_and_tight_tolerance_fails() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = mrspec(&["verify", "--mode", "exact-centrifugal", "--b", "40", "--output", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["params"]["mode"], "exact-centrifugal");
    let shifts: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["delta"].as_f64().unwrap()).collect();
    assert!(shifts.iter().any(|d| d.abs() > 1e-8));

    let strict = mrspec(&["verify", "--tolerance", "1e-16"]);
    assert_eq!(code(&strict), 1);
}
