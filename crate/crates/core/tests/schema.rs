use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> JSONSchema {
    let s: Value = serde_json::from_str(helicity::cli::REPORT_SCHEMA).unwrap();
    JSONSchema::compile(&s).expect("schema compiles")
}

fn report(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    helicity::cli::run(
        std::iter::once("helicity").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    serde_json::from_slice(&out).unwrap()
}

fn assert_valid(v: &Value) {
    let s = schema();
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("invalid report: {msgs:?}");
}

#[test]
fn every_command_validates() {
    for args in [
        vec!["chern", "--h", "-2..2", "--method", "both"],
        vec!["chern", "--h", "100", "--mesh", "latlon:16x32"],
        vec!["chern", "--flip-sign", "--stamp"],
        vec!["chern", "--method", "clutching", "--mesh", "ico:2"],
        vec!["verify", "--trials", "5"],
        vec!["verify", "--suite", "wigner", "--k", "1,2,2"],
        vec!["converge", "--h", "0,1"],
        vec!["converge", "--ladder", "ico:1,ico:2,ico:3"],
        vec!["converge", "--h", "100", "--ladder", "16x32,64x128"],
    ] {
        let v = report(&args);
        assert_valid(&v);
    }
}

#[test]
fn chern_results_carry_the_stable_fields() {
    let v = report(&["chern"]);
    let r = &v["results"][0];
    for key in [
        "h",
        "method",
        "chern",
        "expected",
        "raw_sum",
        "integer_residual",
        "max_plaquette_phase",
        "pass",
    ] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn malformed_reports_are_rejected() {
    let s = schema();
    let good = report(&["chern"]);
    assert!(s.is_valid(&good));
    let mut missing = good.clone();
    missing.as_object_mut().unwrap().remove("summary");
    assert!(!s.is_valid(&missing));
    let mut wrong = good.clone();
    wrong["results"][0]["chern"] = Value::String("two".into());
    assert!(!s.is_valid(&wrong));
    let mut extra = good;
    extra["config"]["colour"] = Value::Bool(true);
    assert!(!s.is_valid(&extra));
}
