use std::fs;
use std::process::{Command, Output};

fn pulselab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pulselab")).args(args).output().unwrap()
}

#[test]
fn simulate_writes_trace_and_refuses_overwrite() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let t = trace.to_str().unwrap();
    let args = ["simulate", "--model", "odd-odd", "--aT", "1", "--bT", "2", "--trace", t];

    let out = pulselab(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().count(), 2002);
    let before = text.clone();

    let out = pulselab(&args);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("overwrite"));
    assert_eq!(fs::read_to_string(&trace).unwrap(), before);

    let mut again = args.to_vec();
    again.push("--overwrite");
    assert!(pulselab(&again).status.success());
}

#[test]
fn bad_input_exits_with_usage_codes() {
    let out = pulselab(&["simulate", "--model", "gaussian", "--aT", "1", "--bT", "1", "--trace", "x.csv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gaussian"));

    let out = pulselab(&["figure", "--id", "2", "--out-dir", "."]);
    assert_eq!(out.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("s.cfg");
    fs::write(&spec, "model = rosen-zener\naT = 0.1\nmethods = approx1\n").unwrap();
    let out = pulselab(&[
        "sweep",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.path().join("o.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("o.csv").exists());
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "b_over_a = 0.8\nk-max = 1\n").unwrap();
    let out = pulselab(&["--config", cfg.to_str().unwrap(), "zeros"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().contains("branch"));
    assert!(text.contains("X+"));

    // command line wins over the file
    let out = pulselab(&["--config", cfg.to_str().unwrap(), "zeros", "--k-max", "0"]);
    let fewer = String::from_utf8(out.stdout).unwrap().lines().count();
    assert!(fewer < text.lines().count());

    fs::write(&cfg, "colour = blue\n").unwrap();
    let out = pulselab(&["--config", cfg.to_str().unwrap(), "zeros", "--b-over-a", "1", "--k-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
