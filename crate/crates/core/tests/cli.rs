mod common;

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(common::bin())
        .args(args)
        .env_remove("NULLSHOCK_TOL_SCALE")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn passing_suites_exit_zero() {
    for suite in ["tensors", "frw", "tov", "lightlike", "match"] {
        let o = run(&["verify", "--suite", suite]);
        assert_eq!(
            code(&o),
            0,
            "{suite}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }
}

#[test]
fn failing_verification_exits_one() {
    assert_eq!(code(&run(&["match", "--perturb-gamma", "0.01"])), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&run(&["trajectory", "--grid", "0,1"])), 2);
    assert_eq!(code(&run(&["match", "--sigma-bar", "1.5"])), 2);
    assert_eq!(
        code(&run(&["match", "--config", "/nonexistent/cfg.json"])),
        2
    );
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"unknown_key": 1}"#).unwrap();
    assert_eq!(code(&run(&["match", "--config", cfg.to_str().unwrap()])), 2);
    let o = Command::new(common::bin())
        .args(["verify", "--suite", "lightlike"])
        .env("NULLSHOCK_TOL_SCALE", "abc")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn trajectory_csv_shape_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&[
            "trajectory",
            "--grid",
            "0,2,100",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    let bytes = std::fs::read(&a).unwrap();
    assert_eq!(bytes, std::fs::read(&b).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,rbar,r,rho,R,rbar_dot,r_dot"));
    assert_eq!(lines.count(), 100);
    let meta = dir.path().join("a.csv.meta.json");
    let meta: serde_json::Value = serde_json::from_slice(&std::fs::read(meta).unwrap()).unwrap();
    assert_eq!(meta["command"], "trajectory");
    assert!(meta["unix_time"].is_u64());
    let stdout = run(&["trajectory", "--grid", "0,2,100"]).stdout;
    assert_eq!(String::from_utf8(stdout).unwrap(), text);
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let p = dir.path().join(format!("r{i}.json"));
            assert_eq!(code(&run(&["match", "--out", p.to_str().unwrap()])), 0);
            std::fs::read(p).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    let doc: serde_json::Value = serde_json::from_slice(&outs[0]).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(!String::from_utf8_lossy(&outs[0]).contains("unix_time"));
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"t_min": 0.0, "t_max": 1.0, "steps": 5}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = String::from_utf8(run(&["trajectory", "--config", c]).stdout).unwrap();
    assert_eq!(from_file.lines().count(), 6);
    let overridden =
        String::from_utf8(run(&["trajectory", "--config", c, "--grid", "0,1,3"]).stdout).unwrap();
    assert_eq!(overridden.lines().count(), 4);
}

#[test]
fn tolerance_scale_env_var_loosens_checks() {
    assert_eq!(code(&run(&["mgs"])), 1);
    let o = Command::new(common::bin())
        .arg("mgs")
        .env("NULLSHOCK_TOL_SCALE", "1e12")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn solve_sigma_reports_both_limits() {
    let o = run(&["solve-sigma"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("0.63442") && s.contains("0.745") && s.contains("distinct=true"));
}

#[test]
fn tensors_minkowski_is_exactly_flat() {
    let o = run(&["tensors", "--metric", "minkowski", "--quantity", "riemann"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("all components are zero"));
    assert_eq!(
        code(&run(&[
            "tensors",
            "--metric",
            "tov",
            "--quantity",
            "einstein",
            "--json"
        ])),
        0
    );
}
