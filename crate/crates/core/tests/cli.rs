use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("helicity").chain(args.iter().copied());
    let code = helicity::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (u8, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}\n{err}"));
    (code, v)
}

fn chern_values(v: &Value) -> Vec<i64> {
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["chern"].as_i64().unwrap())
        .collect()
}

#[test]
fn chern_range_on_default_mesh() {
    let (code, v) = report(&["chern", "--h", "-3..3", "--mesh", "latlon:64x128"]);
    assert_eq!(code, 0);
    assert_eq!(chern_values(&v), vec![6, 4, 2, 0, -2, -4, -6]);
    assert_eq!(v["summary"]["passed"], 7);
    assert_eq!(v["summary"]["failed"], 0);
    for r in v["results"].as_array().unwrap() {
        assert_eq!(r["chern"], r["expected"]);
        assert!(r["integer_residual"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn clutching_photon() {
    let (code, v) = report(&["chern", "--h", "1", "--method", "clutching", "--samples", "256"]);
    assert_eq!(code, 0);
    assert_eq!(chern_values(&v), vec![-2]);
    assert_eq!(v["results"][0]["method"], "clutching_winding");
    assert_eq!(v["config"]["samples"], 256);
}

#[test]
fn both_methods_agree() {
    let (code, v) = report(&["chern", "--h", "-2,0,4", "--method", "both", "--mesh", "ico:4"]);
    assert_eq!(code, 0);
    assert_eq!(chern_values(&v), vec![4, 4, 0, 0, -8, -8]);
}

#[test]
fn coarse_mesh_admissibility() {
    // |h| = 12 still fits on 16x32 (largest face ~0.0385 sr, phase ~0.46 rad).
    let (code, v) = report(&["chern", "--h", "12", "--mesh", "latlon:16x32"]);
    assert_eq!(code, 0);
    assert_eq!(chern_values(&v), vec![-24]);
    // |h| = 100 does not.
    let (code, out, err) = run(&["chern", "--h", "100", "--mesh", "latlon:16x32"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let r = &v["results"][0];
    assert_eq!(r["pass"], false);
    assert!(r["chern"].is_null());
    assert!(r["error"].as_str().unwrap().contains("refine the mesh"));
    assert!(err.contains("FAIL"));
}

#[test]
fn flipped_sign_fails_chern_but_not_verify() {
    let (code, v) = report(&["chern", "--flip-sign"]);
    assert_eq!(code, 1);
    assert_eq!(chern_values(&v), vec![2]);
    let (code, _) = report(&["verify", "--trials", "10"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_default_and_fixed_momentum() {
    let (code, v) = report(&["verify"]);
    assert_eq!(code, 0);
    let suites: std::collections::BTreeSet<_> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(suites.len(), 8);
    let (code, v) = report(&["verify", "--suite", "wigner", "--k", "1,2,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["config"]["k"], serde_json::json!([1.0, 2.0, 2.0]));
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["suite"] == "wigner"));
}

#[test]
fn converge_default_ladder() {
    let (code, v) = report(&["converge"]);
    assert_eq!(code, 0);
    let rungs: Vec<&Value> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "rung")
        .collect();
    assert_eq!(rungs.len(), 5);
    let errs: Vec<f64> = rungs.iter().map(|r| r["uniformity_error"].as_f64().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(*errs.last().unwrap() < 1e-3);
    assert!(rungs.iter().all(|r| r["chern"] == -2));
}

#[test]
fn converge_trivial_bundle() {
    let (code, v) = report(&["converge", "--h", "0"]);
    assert_eq!(code, 0);
    for r in v["results"].as_array().unwrap().iter().filter(|r| r["kind"] == "rung") {
        assert!(r["integer_residual"].as_f64().unwrap() < 1e-9);
        assert_eq!(r["chern"], 0);
    }
}

#[test]
fn converge_skips_inadmissible_rungs() {
    let (code, v) = report(&["converge", "--h", "100", "--ladder", "16x32,64x128,128x256"]);
    let rungs: Vec<&Value> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "rung")
        .collect();
    assert_eq!(rungs[0]["admissible"], false);
    assert_eq!(rungs[1]["chern"], -200);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        vec!["chern", "--h", "3..1"],
        vec!["chern", "--mesh", "latlon:2x4"],
        vec!["chern", "--mesh", "cube:3"],
        vec!["chern", "--h", "10", "--method", "clutching", "--samples", "40"],
        vec!["--threads", "0", "chern"],
        vec!["chern", "--tol", "-1"],
        vec!["converge", "--ladder", "32x64,16x32"],
        vec!["converge", "--ladder", "16x32"],
        vec!["verify", "--k", "0,0,0"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--trials", "0"],
        vec!["frobnicate"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {out} {err}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "--seed", "9", "--trials", "20"];
    assert_eq!(run(&args).1, run(&args).1);
    let args = ["chern", "--h", "-2..2", "--method", "both"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn thread_count_does_not_change_results() {
    let one = report(&["--threads", "1", "chern", "--h", "-4..4", "--mesh", "ico:4"]).1;
    let four = report(&["chern", "--h", "-4..4", "--mesh", "ico:4", "--threads", "4"]).1;
    assert_eq!(one["results"], four["results"]);
    assert_eq!(four["config"]["threads"], 4);
}

#[test]
fn seed_changes_verify_inputs() {
    let a = report(&["verify", "--suite", "boost", "--seed", "1", "--trials", "5"]).1;
    let b = report(&["verify", "--suite", "boost", "--seed", "2", "--trials", "5"]).1;
    assert_ne!(a["results"], b["results"]);
}

#[test]
fn timestamp_only_on_request() {
    let v = report(&["chern"]).1;
    assert!(v["timestamp"].is_null());
    let v = report(&["chern", "--stamp"]).1;
    assert!(v["timestamp"].as_u64().unwrap() > 1_600_000_000);
}

#[test]
fn files_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let profile = dir.path().join("p.csv");
    let mesh = dir.path().join("m.json");
    let (code, stdout, _) = run(&[
        "chern",
        "--h",
        "1,2",
        "--mesh",
        "latlon:8x16",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "--profile",
        profile.to_str().unwrap(),
        "--dump-mesh",
        mesh.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let table = std::fs::read_to_string(&out).unwrap();
    let mut rd = csv::Reader::from_reader(table.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[1][2], "-4");

    let mut rd = csv::Reader::from_path(&profile).unwrap();
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        ["h", "face", "plaquette_phase", "solid_angle", "cell_area"]
    );
    let faces = 16 * 8;
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2 * faces);
    let total: f64 = rows[..faces].iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total / (2.0 * std::f64::consts::PI) + 2.0).abs() < 1e-9);

    let m: Value = serde_json::from_str(&std::fs::read_to_string(&mesh).unwrap()).unwrap();
    assert_eq!(m["faces"].as_array().unwrap().len(), faces);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["chern", "verify", "converge"] {
        assert!(out.contains(sub));
    }
    assert!(!out.contains("flip-sign"));
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_helicity");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["chern", "--h", "-1..1"]), 0);
    assert_eq!(status(&["chern", "--flip-sign"]), 1);
    assert_eq!(status(&["chern", "--h", "x"]), 2);
}
