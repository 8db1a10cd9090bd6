use holokit::cli::{run, EXIT_CHECK_FAILED, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("holokit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = invoke(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} / {err}"));
    (code, v)
}

#[test]
fn report_shape() {
    let (code, v) = report(&["metric", "eval", "--model", "bidisc", "--kind", "kobayashi", "--p", "0,0+0,0", "--xi", "0.3,0+0,0.4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(v["resolved_config"].is_object());
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "ok", "value", "tolerance"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
    }
    assert!((v["result"]["value"].as_f64().unwrap() - 0.4).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invoke(&["cauchy", "eval", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["nonsense"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["cauchy", "eval", "--point", "1,2,3"]).0, EXIT_USAGE);
    // random subcommands demand a seed
    assert_eq!(invoke(&["bers", "verify"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["indicatrix", "sample", "--model", "ball"]).0, EXIT_USAGE);
    // single-dash short flags are not accepted
    assert_eq!(invoke(&["selftest", "-s", "3"]).0, EXIT_USAGE);
}

#[test]
fn numeric_errors_exit_3() {
    let (code, _, err) = invoke(&["poincare", "witness", "--matrix", "1,0,2,0,2,0,4,0"]);
    assert_eq!(code, EXIT_NUMERIC, "{err}");
    // a point outside the disc
    assert_eq!(invoke(&["cauchy", "eval", "--function", "exp", "--point", "2,0"]).0, EXIT_NUMERIC);
}

#[test]
fn failing_checks_exit_1() {
    let (code, v) = report(&["bers", "verify", "--h", "1,0+1,0", "--map", "conjugate", "--seed", "1", "--trials", "10"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["ok"] == false));
    let (code, _) = report(&["osgood", "analyze", "--sequence", "divergent-constants", "--resolution", "16"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("selftest"));
    assert_eq!(invoke(&["--version"]).0, EXIT_OK);
}

#[test]
fn seeded_output_is_reproducible_and_seed_sensitive() {
    let a = invoke(&["indicatrix", "sample", "--model", "bidisc", "--kind", "caratheodory", "--seed", "7", "--count", "50"]);
    let b = invoke(&["indicatrix", "sample", "--model", "bidisc", "--kind", "caratheodory", "--seed", "7", "--count", "50"]);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_OK);
    let other = invoke(&["indicatrix", "sample", "--model", "bidisc", "--kind", "caratheodory", "--seed", "8", "--count", "50", "--cloud-out", "/dev/null"]);
    let with_cloud = invoke(&["indicatrix", "sample", "--model", "bidisc", "--kind", "caratheodory", "--seed", "7", "--count", "50", "--cloud-out", "/dev/null"]);
    assert_ne!(other.1, with_cloud.1);
}

#[test]
fn files_land_where_asked() {
    let dir = tempfile::tempdir().unwrap();
    let masks = dir.path().join("nested/masks");
    let out = dir.path().join("report.json");
    let (code, stdout, err) = invoke(&[
        "osgood", "analyze", "--sequence", "powers", "--resolution", "16", "--k-max", "3",
        "--masks-dir", masks.to_str().unwrap(), "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["command"], "osgood analyze");
    let pbm = std::fs::read_to_string(masks.join("mask_k01.pbm")).unwrap();
    assert!(pbm.starts_with("P1"));
}

#[test]
fn dirichlet_reads_csv_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let n = 256;
    let mut text = String::from("psi,value\n");
    for k in 0..n {
        let psi = std::f64::consts::TAU * k as f64 / n as f64;
        text.push_str(&format!("{psi},{}\n", (2.0 * psi).cos()));
    }
    std::fs::write(&path, text).unwrap();
    let (code, v) = report(&["dirichlet", "solve", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{v}");

    std::fs::write(&path, "psi,value\n0,1\n0.5,1\n3,1\n").unwrap();
    assert_eq!(invoke(&["dirichlet", "solve", "--input", path.to_str().unwrap()]).0, EXIT_USAGE);
}
