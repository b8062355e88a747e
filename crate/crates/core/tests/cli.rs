use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_castleag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn curve_subcommand() {
    let out = run(&["curve", "--s", "3", "--h", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["params"]["q"], 8);
    assert_eq!(v["params"]["genus"], 14);
    assert_eq!(v["castle"], true);

    let out = run(&["curve", "--s", "3", "--h", "1", "--weak-castle"]);
    let v = stdout_json(&out);
    assert_eq!(v["weak_castle"]["witness_holds"], true);
}

#[test]
fn invalid_params_exit_2() {
    let out = run(&["curve", "--s", "4", "--h", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error: "), "one-line reason, got: {err}");
}

#[test]
fn points_count_only() {
    let out = run(&["points", "--s", "5", "--h", "1", "--ext", "3", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["n_points"], 96257);
}

#[test]
fn points_stream_csv() {
    let out = run(&["points", "--s", "3", "--h", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y");
    assert_eq!(lines.len(), 65); // header + 64 affine points
    assert_eq!(lines[1], "0,0");
}

#[test]
fn points_budget_exit_3() {
    let out = run(&["points", "--s", "5", "--h", "1", "--ext", "7", "--count-only"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn semigroup_subcommand() {
    let out = run(&["semigroup", "--s", "3", "--h", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["generators"], serde_json::json!([8, 10, 12, 13]));
    assert_eq!(v["genus"], 14);
    assert_eq!(v["conductor"], 28);
    assert_eq!(v["symmetric"], true);
}

#[test]
fn fengrao_subcommand() {
    let out = run(&["fengrao", "--s", "3", "--h", "1", "--ell", "0"]);
    let v = stdout_json(&out);
    assert_eq!(v["nu"], 2);
    assert_eq!(v["rho_next"], 8);
}

#[test]
fn code_export_roundtrip() {
    let dir = std::env::temp_dir().join("castleag_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g13.csv");
    let out = run(&[
        "code", "--s", "3", "--h", "1", "--r", "13",
        "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["k"], 5);
    assert_eq!(v["n"], 64);
    assert_eq!(v["d_star"], 51);
    let data = std::fs::read(&path).unwrap();
    let back = castleag::agcode::read_matrix(&mut std::io::BufReader::new(&data[..])).unwrap();
    assert_eq!(back.k(), 5);
    assert_eq!(back.n(), 64);
}

#[test]
fn dual_subcommand() {
    let out = run(&["dual", "--s", "3", "--h", "1", "--r", "30"]);
    let v = stdout_json(&out);
    assert_eq!(v["r_dual"], 60);
    assert_eq!(v["holds"], true);
    // out-of-range dual parameter is a validation error
    let out = run(&["dual", "--s", "3", "--h", "1", "--r", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn distance_subcommand_and_budget() {
    let out = run(&["distance", "--s", "3", "--h", "1", "--r", "8"]);
    let v = stdout_json(&out);
    assert_eq!(v["d_star"], 56);
    assert!(v["d_exact"].as_u64().unwrap() >= 56);

    let out = run(&["distance", "--s", "3", "--h", "1", "--r", "13", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn quantum_tpoint_single_row() {
    let out = run(&["quantum", "tpoint", "--s", "3", "--h", "1", "--a", "40", "--b", "50"]);
    let v = stdout_json(&out);
    assert_eq!(v[0]["n"], 64);
    assert_eq!(v[0]["k"], 10);
    assert_eq!(v[0]["d_lower"], 14);

    let out = run(&["quantum", "tpoint", "--s", "3", "--h", "1", "--a", "26", "--b", "30"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quantum_css_table_csv() {
    let out = run(&["quantum", "css", "--s", "3", "--h", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,k,d_lower,construction,a,b,delta_q_upper");
    assert!(lines.next().unwrap().starts_with("64,"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["quantum", "tpoint", "--s", "3", "--h", "1", "--format", "csv"]);
    let b = run(&["quantum", "tpoint", "--s", "3", "--h", "1", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["points", "--s", "3", "--h", "1"]);
    let b = run(&["points", "--s", "3", "--h", "1"]);
    assert_eq!(a.stdout, b.stdout);
}
