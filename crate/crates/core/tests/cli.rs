use isq_spectral::cli::{self, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run_json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let mut full = vec!["isq-spectral"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let code = cli::run(full);
    let text = std::fs::read_to_string(&out).unwrap_or_else(|_| "null".into());
    (code, serde_json::from_str(&text).unwrap())
}

#[test]
fn measure_reports_the_atom() {
    let (code, v) = run_json(&["measure", "--kappa", "0", "--theta", "1.5707963267948966", "--e-grid", "1:4:2"]);
    assert_eq!(code, EXIT_OK);
    let atom = &v["data"]["atom"];
    assert!((atom["energy"].as_f64().unwrap() + 1.0).abs() < 1e-15);
    assert!((atom["weight"].as_f64().unwrap() - 4.934_802_200_544_679).abs() < 1e-13);
    assert_eq!(v["data"]["density"][0].as_f64().unwrap(), 0.5);
    assert!(v["meta"]["columns"]["density"].is_string());
    assert_eq!(v["meta"]["config"]["command"], "measure");
}

#[test]
fn eval_half_order() {
    let (code, v) = run_json(&[
        "eval",
        "--kappa",
        "0.5",
        "--theta",
        "0",
        "--theta-mode",
        "offset-from-theta-kappa",
        "--e-grid",
        "4:4:1",
        "--r-grid",
        "1:1:1",
    ]);
    assert_eq!(code, EXIT_OK);
    // 4^{-1/4} J_{1/2}(2)
    let expect = 0.362_757_189_020_992_3;
    let u = v["data"]["u"][0].as_f64().unwrap();
    assert!((u - expect).abs() < 1e-14);
    assert_eq!(v["data"]["u_theta"][0].as_f64().unwrap(), u);
}

#[test]
fn csv_has_one_header_line() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let code = cli::run([
        "isq-spectral",
        "eval",
        "--e-grid",
        "-1:1:3",
        "--r-grid",
        "0.5:1:2",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = std::fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "E,r,u,w,u_theta,v_re,v_im");
    assert_eq!(lines.len(), 7);
}

#[test]
fn validation_errors_exit_with_usage_code() {
    assert_eq!(cli::run(["isq-spectral", "eval", "--kappa", "1.2"]), EXIT_USAGE);
    assert_eq!(cli::run(["isq-spectral", "eval", "--r-grid", "0:1:4"]), EXIT_USAGE);
    assert_eq!(cli::run(["isq-spectral", "measure", "--e-grid", "-1:1:4"]), EXIT_USAGE);
    assert_eq!(cli::run(["isq-spectral", "eval", "--tol", "bogus=1"]), EXIT_USAGE);
    assert_eq!(cli::run(["isq-spectral", "frobnicate"]), EXIT_USAGE);
    assert_eq!(cli::run(["isq-spectral", "transform", "--bump", "2:1:3"]), EXIT_USAGE);
}

#[test]
fn transform_exit_codes_track_the_tail() {
    let args = ["transform", "--kappa", "0.5", "--theta", "0", "--theta-mode", "offset-from-theta-kappa"];
    let mut ok = args.to_vec();
    ok.extend_from_slice(&["--e-grid", "1:4:2", "--e-max", "400"]);
    let (code, v) = run_json(&ok);
    assert_eq!(code, EXIT_OK);
    assert!(v["data"]["parseval"]["defect"].as_f64().unwrap() < 1e-4);
    assert!(v["data"]["atom_coeff"].is_null());

    let mut short = args.to_vec();
    short.extend_from_slice(&["--e-grid", "1:4:2", "--e-max", "10"]);
    let (code, v) = run_json(&short);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert_eq!(v["data"]["parseval"]["inconclusive"], true);
}

#[test]
fn transform_reads_a_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("psi.json");
    let nodes = [1.25, 1.75];
    let body = serde_json::json!({"support": [1.0, 2.0], "nodes": nodes, "weights": [0.5, 0.5], "values": [1.0, 1.0]});
    std::fs::write(&input, body.to_string()).unwrap();
    let (code, v) = run_json(&["transform", "--input", input.to_str().unwrap(), "--e-grid", "1:2:2", "--e-max", "4"]);
    assert!(code == EXIT_OK || code == EXIT_INCONCLUSIVE);
    assert_eq!(v["data"]["r"].as_array().unwrap().len(), 2);
}
