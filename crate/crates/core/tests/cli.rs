mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn monopole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monopole")).args(args).env_remove("MONOPOLE_TOL").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn emit_sp2(dir: &Path) -> String {
    let path = dir.join("sp2.json").to_string_lossy().into_owned();
    let out = monopole(&["family", "--name", "sp2", "--emit", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn emitted_family_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_sp2(dir.path());
    let out = monopole(&["verify", "--data", &path, "--domain", "ray"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["valid"], Value::Bool(true));

    // the report embedded at construction is the same check
    let emitted: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(emitted["validity"], report);
}

#[test]
fn field_profile_csv_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_sp2(dir.path());
    let args = ["fields", "--data", &path, "--ray", "0:0.99:200", "--emit", "csv"];
    let out = monopole(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("r,higgs_norm_sq,energy_density,eig_0"));
    let mut rows = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let want = common::sp2_norm_sq(cols[0]);
        assert!((cols[1] - want).abs() <= 1e-8 * want.max(1e-300) + 1e-15, "r={}: {} vs {want}", cols[0], cols[1]);
        rows += 1;
    }
    assert_eq!(rows, 200);
    assert_eq!(monopole(&args).stdout, text.as_bytes(), "CSV output is not deterministic");
}

#[test]
fn degenerate_axial_data_exits_with_validation_failure() {
    let out = monopole(&["family", "--name", "axial", "--params", "A=0", "--emit", "-"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["validity"]["valid"], Value::Bool(false));
    assert_eq!(v["validity"]["delta_min_eig"].as_f64(), Some(0.0));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(monopole(&["bogus"]).status.code(), Some(1));
    assert_eq!(monopole(&["family", "--name", "sp2", "--params", "x=1"]).status.code(), Some(1));
    assert_eq!(monopole(&["family", "--name", "nosuch"]).status.code(), Some(1));
    assert_eq!(monopole(&["verify", "--data", "/nonexistent.json"]).status.code(), Some(1));
    assert_eq!(monopole(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_of_range_parameters_are_validation_failures() {
    let out = monopole(&["family", "--name", "nn", "--params", "n=3,a=0.9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tolerance_override_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let path = emit_sp2(dir.path());
    let strict = Command::new(env!("CARGO_BIN_EXE_monopole"))
        .args(["verify", "--data", &path, "--domain", "ray"])
        .env("MONOPOLE_TOL", "1e-30")
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(2));
    assert_eq!(json(&strict)["tolerance"].as_f64(), Some(1e-30));
}

#[test]
fn intertwiner_output() {
    let out = monopole(&["bmat", "--n", "3", "--real"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-12);
    assert_eq!(v["B"][0]["rows"], 5);
    assert_eq!(v["B"][0]["cols"], 3);
}

#[test]
fn rational_map_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("axial.json").to_string_lossy().into_owned();
    assert_eq!(monopole(&["family", "--name", "axial", "--params", "A=0.3", "--emit", &path]).status.code(), Some(0));
    let out = monopole(&["rational", "--data", &path, "--eval", "0.5,1+2i,-0.3i"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (i, z) in [(0.5, 0.0), (1.0, 2.0), (0.0, -0.3)].into_iter().enumerate() {
        let got = &v["values"][i]["R"];
        let want = common::axial_rational(0.3, monopole_adhm::quat::C64::new(z.0, z.1));
        let got = monopole_adhm::quat::C64::new(got[0].as_f64().unwrap(), got[1].as_f64().unwrap());
        assert!((got - want).norm() < 1e-10 * (1.0 + want.norm()));
    }
}

#[test]
fn ansatz_and_decompose() {
    let args = ["ansatz", "--summands", "3,1", "--params", "a=0.577", "--check-n", "2", "--seed", "4"];
    let out = monopole(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["symmetric_parameter_count"], 1);
    assert!(v["spherical_residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["structure_group_check"]["verdict"], "not_excluded");
    assert_eq!(monopole(&args).stdout, out.stdout, "seeded run is not reproducible");

    let dir = tempfile::tempdir().unwrap();
    let path = emit_sp2(dir.path());
    let v = json(&monopole(&["decompose", "--data", &path]));
    assert_eq!(v["generator_summands"], serde_json::json!([3, 1]));
    assert_eq!(v["structure_summands"], serde_json::json!([4]));
}

#[test]
fn spectral_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("axial.json").to_string_lossy().into_owned();
    monopole(&["family", "--name", "axial", "--params", "A=0.25", "--emit", &path]);
    let v = json(&monopole(&["spectral", "--data", &path]));
    let c = &v["coefficients"];
    let curve = common::axial_quartic(0.25);
    for p in 0..3 {
        for q in 0..3 {
            let want = curve.coefficients[p][q];
            assert!((c[p][q][0].as_f64().unwrap() - want.re).abs() < 1e-9);
            assert!((c[p][q][1].as_f64().unwrap() - want.im).abs() < 1e-9);
        }
    }
}
