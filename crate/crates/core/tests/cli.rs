use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ybsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/run_report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).expect("stdout is JSON");
    if let Err(errors) = schema.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
    v
}

#[test]
fn every_command_emits_schema_valid_json() {
    let schema = schema();
    let runs: [&[&str]; 7] = [
        &["verify-algebra"],
        &["ybe", "--samples", "4"],
        &["entangle", "--theta", "0.5236", "--input", "011"],
        &["sweep", "--steps", "4", "--quantities", "tangle,eigenvalues,berry", "--berry-steps", "200"],
        &["spectrum", "--theta", "1.0472"],
        &["spectrum", "--theta", "1.5707963267948966"],
        &["berry", "--theta", "1.0472", "--method", "wilson", "--steps", "400"],
    ];
    for args in runs {
        let o = ybsys(args);
        assert!(matches!(code(&o), 0 | 1), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = assert_valid(&schema, &o);
        assert_eq!(v["command"], args[0]);
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let o = ybsys(&["entangle", "--theta", "0.3"]);
    let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema.is_valid(&v));
    v["residuals"][0]["max_residual"] = Value::Null;
    assert!(!schema.is_valid(&v));
    v = serde_json::from_slice(&o.stdout).unwrap();
    v["command"] = "unknown".into();
    assert!(!schema.is_valid(&v));
}

#[test]
fn fixed_seed_is_byte_identical() {
    for args in [
        &["verify-algebra", "--seed", "7"][..],
        &["ybe", "--seed", "3", "--samples", "6"][..],
        &["sweep", "--steps", "9", "--format", "csv"][..],
    ] {
        let a = ybsys(args);
        let b = ybsys(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = ybsys(&["ybe", "--seed", "3", "--samples", "6"]);
    let b = ybsys(&["ybe", "--seed", "4", "--samples", "6"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&ybsys(&["verify-algebra"])), 0);
    assert_eq!(code(&ybsys(&["entangle", "--theta", "0.5236"])), 0);
    // unattainable tolerance
    assert_eq!(code(&ybsys(&["verify-algebra", "--tol", "1e-300"])), 1);
    // usage errors
    assert_eq!(code(&ybsys(&["frobnicate"])), 2);
    assert_eq!(code(&ybsys(&["entangle"])), 2);
    assert_eq!(code(&ybsys(&["entangle", "--theta", "0.1", "--input", "012"])), 2);
    assert_eq!(code(&ybsys(&["sweep", "--steps", "1"])), 2);
    assert_eq!(code(&ybsys(&["sweep", "--theta-min", "2", "--theta-max", "1"])), 2);
    assert_eq!(code(&ybsys(&["berry", "--theta", "1", "--steps", "10"])), 2);
    assert_eq!(code(&ybsys(&["spectrum", "--theta", "1", "--format", "csv"])), 2);
    // the levels merge when cosθ = 0
    assert_eq!(
        code(&ybsys(&["berry", "--theta", "1.5707963267948966", "--method", "wilson", "--steps", "100"])),
        3
    );
}

#[test]
fn sweep_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let o = ybsys(&[
        "sweep",
        "--theta-min",
        "0",
        "--theta-max",
        "180",
        "--degrees",
        "--steps",
        "7",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "theta,tau_measured,tau_closed,c_pair_measured,c_pair_closed,c2_one_rest_measured,c2_one_rest_closed,max_residual"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 7);
    for r in &rows {
        assert_eq!(r.len(), 8);
    }
    // 30° is the GHZ point
    assert!((rows[1][0] - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    assert!((rows[1][1] - 1.0).abs() < 1e-9);
    // cells carry 17 significant digits
    let first_cell = text.lines().nth(2).unwrap().split(',').next().unwrap();
    let mantissa = first_cell.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn documented_examples() {
    let v: Value = serde_json::from_slice(&ybsys(&["entangle", "--theta", "0.5236", "--phi", "0", "--input", "000"]).stdout).unwrap();
    assert!((v["results"]["measured"]["tau_abc"].as_f64().unwrap() - 1.0).abs() < 1e-6);

    let v: Value = serde_json::from_slice(&ybsys(&["spectrum", "--theta", "1.0472"]).stdout).unwrap();
    let ev: Vec<f64> = v["results"]["spectrum"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    let expect = [-0.5, -0.5, 0.0, 0.0, 0.0, 0.0, 0.5, 0.5];
    for (a, b) in ev.iter().zip(expect) {
        assert!((a - b).abs() < 1e-4);
    }

    let o = ybsys(&["berry", "--theta", "1.5708", "--steps", "10000", "--method", "analytic"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    for level in v["results"]["levels"].as_array().unwrap() {
        let sign = match level["level"].as_str().unwrap() {
            "minus" => 1.0,
            "plus" => -1.0,
            _ => 0.0,
        };
        for p in level["phases"].as_array().unwrap() {
            assert!((p.as_f64().unwrap() - sign * std::f64::consts::PI).abs() < 1e-3);
        }
    }
}
