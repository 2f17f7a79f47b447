use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn stark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stark")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = stark(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn coefficient_table() {
    let (header, rows) = csv_rows(&ok(&["coeffs", "--alpha", "3", "--order", "2"]));
    assert_eq!(header, ["n", "power", "value", "exact"]);
    assert_eq!(num(&rows[1][2]), -2.25);
    assert_eq!(num(&rows[2][2]), -55.546875);
    assert_eq!(rows[2][3], "-3555/64");
}

#[test]
fn symbolic_table_lists_reduced_polynomials() {
    let (_, rows) = csv_rows(&ok(&["coeffs", "--symbolic", "--order", "2"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][3], "2*a + 3");
    assert_eq!(rows[1][3], "96*a^3 + 645*a^2 + 1522*a + 1257");
}

#[test]
fn sweep_rows() {
    let (header, rows) = csv_rows(&ok(&["sweep", "--alpha", "3", "--fields", "0:1:101"]));
    assert_eq!(header, ["field", "delta", "gamma"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(num(&rows[0][2]), 0.0);
    assert!(rows[1..].iter().all(|r| num(&r[2]) > 0.0));
    assert!(rows.windows(2).all(|w| num(&w[0][0]) < num(&w[1][0])));
}

#[test]
fn fit_reports_residual() {
    let doc: Value = serde_json::from_str(&ok(&["fit", "--alpha", "2", "--format", "json"])).unwrap();
    assert!(doc["meta"]["round_trip_residual"].as_f64().unwrap() < 1e-10);
    let names: Vec<&str> = doc["data"].as_array().unwrap().iter().map(|r| r["parameter"].as_str().unwrap()).collect();
    assert_eq!(names, ["h1", "h2", "h3", "h4"]);
    assert_eq!(doc["meta"]["config"]["command"], "fit");
    assert!(doc["meta"]["version"].is_string());
}

#[test]
fn json_and_csv_agree() {
    let args = ["wkb", "--alpha", "2", "--fields", "0.4:4:4"];
    let (header, rows) = csv_rows(&ok(&args));
    let doc: Value = serde_json::from_str(&ok(&[&args[..], &["--format", "json"]].concat())).unwrap();
    let data = doc["data"].as_array().unwrap();
    assert_eq!(data.len(), rows.len());
    for (obj, row) in data.iter().zip(&rows) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys, header.iter().collect::<Vec<_>>());
        for (k, cell) in header.iter().zip(row) {
            match obj[k].as_f64() {
                Some(v) => assert_eq!(v, num(cell)),
                None => assert!(obj[k].is_null() && cell.is_empty()),
            }
        }
    }
    // Above the barrier the turning points are absent.
    assert!(rows[3][1].is_empty());
    assert!(!rows[0][1].is_empty());
}

#[test]
fn dispersion_report_rows() {
    let (_, rows) = csv_rows(&ok(&["dispersion", "--alpha", "3"]));
    assert_eq!(rows.len(), 3);
    for r in &rows {
        assert!(num(&r[3]) <= 0.05);
    }
}

#[test]
fn figure_two_metadata_lists_critical_fields() {
    let doc: Value = serde_json::from_str(&ok(&["reproduce", "--figure", "2", "--format", "json"])).unwrap();
    let fields: Vec<f64> =
        doc["meta"]["critical_fields"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    for (got, want) in fields.iter().zip([0.12, 0.33, 1.3, 10.2]) {
        assert!((got - want).abs() <= 0.2 * want, "{got} vs {want}");
    }
    assert_eq!(doc["data"].as_array().unwrap().len(), 4 * 101);
}

#[test]
fn figures_one_and_three() {
    let (_, rows) = csv_rows(&ok(&["reproduce", "--figure", "1"]));
    assert_eq!(rows.len(), 101);
    let (header, rows) = csv_rows(&ok(&["reproduce", "--figure", "3"]));
    assert_eq!(header[4], "gamma_landau");
    assert_eq!(rows.len(), 4 * 41);
}

#[test]
fn exit_codes() {
    for args in [
        &["coeffs", "--alpha", "0.5"][..],
        &["sweep", "--alpha", "3", "--fields", "0:1:1"],
        &["sweep", "--alpha", "3", "--fields", "1:0:5"],
        &["fit", "--alpha", "3", "--l", "3"],
        &["reproduce", "--figure", "4"],
        &["coeffs", "--order", "2"],
        &["wkb", "--alpha", "3", "--fields", "0:1:3"],
        &["bogus"],
    ] {
        assert_eq!(stark(args).status.code(), Some(2), "{args:?}");
    }
    // No resummed rate is large enough to anchor the calibration.
    assert_eq!(stark(&["wkb", "--alpha", "3", "--fields", "0.001:0.002:2"]).status.code(), Some(3));
}

#[test]
fn failed_run_leaves_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    assert_eq!(stark(&["coeffs", "--alpha", "0.5", "--output", p]).status.code(), Some(2));
    assert!(!Path::new(p).exists());
    ok(&["coeffs", "--alpha", "3", "--output", p]);
    assert!(std::fs::read_to_string(&path).unwrap().contains("-3555/64"));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn repeated_runs_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["csv", "json"] {
        let a = dir.path().join(format!("a.{format}"));
        let b = dir.path().join(format!("b.{format}"));
        for p in [&a, &b] {
            ok(&["reproduce", "--figure", "2", "--format", format, "--output", p.to_str().unwrap()]);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}
