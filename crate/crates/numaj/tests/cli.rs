use std::path::Path;
use std::process::{Command, Output};

use numaj::data::{DATA_DIR_ENV, EMBEDDED_MAGNITUDES, EMBEDDED_PARAMS, MAGNITUDES_FILE_NAME, PARAMS_FILE_NAME};
use numaj::document::significant;
use numaj_core::mixing::{bound_report_at, MixingParams};

fn numaj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_numaj")).args(args).env_remove(DATA_DIR_ENV).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn csv_pairs(text: &str) -> Vec<(String, String)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["quantity", "value"]);
    r.records().map(|rec| rec.unwrap()).map(|rec| (rec[0].to_string(), rec[1].to_string())).collect()
}

#[test]
fn default_report_shows_the_headline_numbers() {
    let o = numaj(&["report"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for needle in ["0.8213", "0.9887", "0.5114", "0.3937", "0.4089"] {
        assert!(text.contains(needle), "missing {needle} in\n{text}");
    }
}

#[test]
fn csv_report_round_trips() {
    let o = numaj(&["report", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let pairs = csv_pairs(&stdout(&o));
    let r = bound_report_at(&MixingParams::nufit_best_fit()).unwrap();
    let mut seen = 0;
    for (name, value) in &r.bounds {
        let (_, text) = pairs.iter().find(|(k, _)| k == name).unwrap_or_else(|| panic!("no row {name}"));
        assert_eq!(text.parse::<f64>().unwrap(), *value, "{name}");
        seen += 1;
    }
    assert_eq!(seen, 4);
    let zeta1: f64 = pairs.iter().find(|(k, _)| k == "zeta_1").unwrap().1.parse().unwrap();
    assert_eq!(zeta1, r.zetas.as_slice()[0]);
}

#[test]
fn table_agrees_with_json_to_six_digits() {
    let table = stdout(&numaj(&["report", "--alpha-order", "2", "--kappa-f", "0.8", "--kappa-m", "0.9"]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&numaj(&[
        "report",
        "--alpha-order",
        "2",
        "--kappa-f",
        "0.8",
        "--kappa-m",
        "0.9",
        "--format",
        "json",
    ])))
    .unwrap();
    let mut compared = 0;
    for row in json.as_array().unwrap() {
        let (key, value) = (row["quantity"].as_str().unwrap(), &row["value"]);
        let Some(x) = value.as_f64() else { continue };
        let line = table.lines().find(|l| l.split_whitespace().next() == Some(key)).unwrap();
        let printed = line.split_whitespace().nth(1).unwrap();
        assert_eq!(printed, significant(x, 6), "{key}");
        let back: f64 = printed.parse().unwrap();
        assert!((back - x).abs() <= 5e-6 * x.abs(), "{key}: {back} vs {x}");
        compared += 1;
    }
    assert!(compared > 20, "{compared}");
    assert!(table.contains("tsallis_inefficiency_per_detector"));
}

#[test]
fn input_errors_exit_with_two() {
    let o = numaj(&["report", "--params", "/definitely/not/here.toml"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/definitely/not/here.toml"));

    for args in [
        &["scan", "--sigma", "2"][..],
        &["scan", "--grid", "10"],
        &["figure1", "--alpha", "0:2:0.1"],
        &["report", "--kappa-f", "0.3"],
        &["report", "--kappa-m", "1.5"],
        &["verify", "--samples", "0"],
        &["report", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = numaj(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn invalid_parameter_file_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.toml");
    std::fs::write(&path, EMBEDDED_PARAMS.replace("bfp = 217.0", "bfp = 400.0")).unwrap();
    let o = numaj(&["report", "--params", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("delta") && err.contains("p.toml"), "{err}");

    std::fs::write(&path, "[[parameter]]\nname = 3\n").unwrap();
    let o = numaj(&["report", "--params", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("name"), "{}", stderr(&o));
}

fn write_params(dir: &Path, bfp_s12: &str) {
    std::fs::write(dir.join(PARAMS_FILE_NAME), EMBEDDED_PARAMS.replace("bfp = 0.310", bfp_s12)).unwrap();
    std::fs::write(dir.join(MAGNITUDES_FILE_NAME), EMBEDDED_MAGNITUDES).unwrap();
}

#[test]
fn data_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    write_params(dir.path(), "bfp = 0.300");
    let run = |env: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_numaj"));
        c.args(["report", "--format", "csv"]).env_remove(DATA_DIR_ENV);
        if let Some(d) = env {
            c.env(DATA_DIR_ENV, d);
        }
        c.output().unwrap()
    };
    let (from_env, builtin) = (run(Some(dir.path())), run(None));
    assert_eq!(from_env.status.code(), Some(0), "{}", stderr(&from_env));
    let eta1 = |o: &Output| csv_pairs(&stdout(o)).into_iter().find(|(k, _)| k == "eta1").unwrap().1;
    // eta1 = c12 c13 moves with theta12.
    assert_ne!(eta1(&from_env), eta1(&builtin));

    let empty = tempfile::tempdir().unwrap();
    let o = run(Some(empty.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(PARAMS_FILE_NAME));
}

#[test]
fn figure1_writes_plot_ready_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig.csv");
    let o = numaj(&["figure1", "--alpha", "0.5:1.5:0.25", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(r.headers().unwrap(), vec!["alpha", "sum_type_bound", "product_type_bound"]);
    let alphas: Vec<f64> = r.records().map(|rec| rec.unwrap()[0].parse().unwrap()).collect();
    assert_eq!(alphas, vec![0.001, 0.5, 0.75, 1.0, 1.25, 1.5]);
}

#[test]
fn corrupted_omega_is_reported_with_a_counterexample() {
    let o = numaj(&["verify", "--samples", "30", "--corrupt-omega"]);
    assert_eq!(o.status.code(), Some(4));
    let err = stderr(&o);
    assert!(err.contains("property violated") && err.contains("p = ["), "{err}");
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_is_reproducible_and_json_is_structured() {
    let args = ["verify", "--samples", "60", "--seed", "42", "--format", "json"];
    let (a, b) = (numaj(&args), numaj(&args));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r["violations"] == 0 && r["status"] == "pass"));
    assert_eq!(rows[0]["checks"], 180);
}

#[test]
fn coarse_scan_emits_verdicts() {
    let o = numaj(&["scan", "--grid", "50", "--no-refine", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let pairs = csv_pairs(&stdout(&o));
    let get = |k: &str| pairs.iter().find(|(key, _)| key == k).unwrap_or_else(|| panic!("{k}")).1.clone();
    assert_eq!(get("zeta2.holds"), "true");
    assert_eq!(get("certificate.holds"), "true");
    assert_eq!(get("zeta2.points_evaluated"), "6250000");
    let m: f64 = get("zeta2.max_mu2_over_tau3").parse().unwrap();
    assert!((0.93..0.96).contains(&m), "{m}");
}
