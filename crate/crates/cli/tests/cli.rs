use std::process::{Command, Output};

use manin_cli::report::{COMPARE_CSV_HEADER, COUNT_CSV_HEADER, SCHEMA_VERSION};
use serde_json::Value;

fn manin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_manin"))
        .args(args)
        .env_remove("MANIN_WORKERS")
        .output()
        .expect("spawn manin")
}

fn json_ok(args: &[&str]) -> Value {
    let out = manin(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
    v
}

#[test]
fn fan_reports_alpha_and_rank() {
    let v = json_ok(&["fan"]);
    assert_eq!(v["kind"], "fan");
    assert_eq!(v["alpha"], "7/216");
    assert_eq!(v["picard_rank"], 4);
    assert_eq!(v["picard_rank_geometric"], 7);
    assert_eq!(v["cone_indices"], serde_json::json!([3, 3, 3]));
    assert_eq!(v["resolved_rays"].as_array().unwrap().len(), 9);
    assert_eq!(v["relations"][0], "D5 = 2D1 + D2 - D4");
}

#[test]
fn fan_from_file_with_identity() {
    let dir = std::env::temp_dir().join(format!("manin-fan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fan.txt");
    std::fs::write(&path, "# singular fan\n-1 -1\n-1 2\n2 -1\n").unwrap();
    let v = json_ok(&["fan", "--fan-file", path.to_str().unwrap(), "--involution", "identity"]);
    assert_eq!(v["picard_rank"], 7);
    std::fs::write(&path, "1 2 3\n").unwrap();
    let out = manin(&["fan", "--fan-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
}

#[test]
fn count_csv_row() {
    let out = manin(&["count", "--max-height", "4", "--method", "brute"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, COUNT_CSV_HEADER);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    assert_eq!((&rows[0][0], &rows[0][1], &rows[0][2]), ("4", "12", "brute"));
}

#[test]
fn count_all_methods_agree() {
    let v = json_ok(&["count", "--min-height", "1", "--max-height", "60", "--method", "all", "--format", "json"]);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 180);
    for m in ["brute", "fast", "descent"] {
        let at_60 = recs.iter().find(|r| r["method"] == m && r["bound"] == 60).unwrap();
        assert_eq!(at_60["count"], recs[59]["count"]);
    }
}

#[test]
fn identical_runs_give_identical_output() {
    let strip = |o: Output| -> Vec<String> {
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').map_or(l, |(a, _)| a).to_string())
            .collect()
    };
    let a = strip(manin(&["--workers", "1", "count", "--min-height", "900", "--max-height", "1000"]));
    let b = strip(manin(&["--workers", "4", "count", "--min-height", "900", "--max-height", "1000"]));
    assert_eq!(a, b);
    assert_eq!(a.len(), 102);
}

#[test]
fn predict_keys() {
    let v = json_ok(&["predict", "--cutoff", "100000", "--tol", "1e-3"]);
    assert_eq!(v["kind"], "predict");
    assert_eq!(v["alpha"], "7/216");
    assert_eq!(v["beta"], "1");
    assert_eq!(v["omega_2"], "2");
    assert!((v["omega_inf"].as_f64().unwrap() - 3.0 * std::f64::consts::PI).abs() < 1e-12);
    let c = v["c_interval"].as_array().unwrap();
    assert!(c[0].as_f64().unwrap() < c[1].as_f64().unwrap());
    let tau = &v["tau"];
    for key in ["partial_product", "cutoff", "tail_bound", "value_interval", "tol_met"] {
        assert!(!tau[key].is_null(), "{key}");
    }
}

#[test]
fn predict_with_quadrature() {
    let v = json_ok(&["predict", "--cutoff", "1000", "--tol", "1", "--omega", "quadrature", "--omega-tol", "1e-5"]);
    assert!((v["omega_inf"].as_f64().unwrap() - 3.0 * std::f64::consts::PI).abs() < 1e-5);
}

#[test]
fn compare_csv_and_fit_file() {
    let dir = std::env::temp_dir().join(format!("manin-cmp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let fit = dir.join("fit.json");
    let rows = dir.join("rows.csv");
    let out = manin(&[
        "compare", "--min-exp", "6", "--max-exp", "14", "--cutoff", "1000", "--tol", "1",
        "--format", "csv", "--fit-output", fit.to_str().unwrap(), "-o", rows.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&rows).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, COMPARE_CSV_HEADER);
    assert_eq!(rdr.records().count(), 9);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&fit).unwrap()).unwrap();
    assert_eq!(v["kind"], "qfit");
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
}

#[test]
fn density_and_cox() {
    let d = json_ok(&["density", "--p", "2", "--k", "1"]);
    assert_eq!(d["count"], 8);
    assert_eq!(d["oracle_value"], "1");
    assert_eq!(d["closed_form"], "2");
    let c = json_ok(&["cox"]);
    assert_eq!(c["generators"].as_array().unwrap().len(), 6);
    assert_eq!(c["relation_strings"][0], "eta5 * eta5' = eta2 * eta3^2 * eta4^3");
}

#[test]
fn errors_are_machine_readable() {
    let cases: [(&[&str], i32, &str); 4] = [
        (&["density", "--p", "3", "--k", "12"], 4, "budget"),
        (&["density", "--p", "4", "--k", "1"], 2, "invalid_input"),
        (&["count", "--max-height", "0"], 2, "invalid_input"),
        (&["--workers", "0", "count", "--max-height", "3"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let out = manin(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(out.stdout.is_empty());
        let v: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(v["kind"], "error");
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
    }
}

#[test]
fn worker_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_manin"))
        .args(["count", "--max-height", "10"])
        .env("MANIN_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
