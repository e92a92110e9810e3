use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ietk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ietk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_error(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr has a line");
    serde_json::from_str(line).expect("stderr is JSON")
}

#[test]
fn perm_info_reports_the_stratum() {
    let out = ietk(&["perm", "info", "--sigma", "4,3,2,1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["k"], 1);
    assert_eq!(v["orders"], serde_json::json!([2]));
    assert_eq!(v["genus"], 2);
}

#[test]
fn pair_cone_prints_membership() {
    let out = ietk(&["pair", "cone", "--sigma", "2,1", "--b", "1,-1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), r#"{"in_cone":true}"#);
}

#[test]
fn golden_evaluation_stays_exact() {
    let out = ietk(&["iet", "eval", "--sigma", "2,1", "--a", "1,phi", "--x", "1/2"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["y"], "1+(1/2)*sqrt5");
}

#[test]
fn float_literal_warns_and_exact_rejects() {
    let out = ietk(&["iet", "eval", "--sigma", "2,1", "--a", "1,0.5", "--x", "0.25"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(stdout_json(&out)["y"], 0.75);

    let out = ietk(&["--exact", "iet", "eval", "--sigma", "2,1", "--a", "1,0.5", "--x", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "ParseError");
}

#[test]
fn errors_carry_codes() {
    let out = ietk(&["perm", "info", "--sigma", "1,3,x"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "ParseError");

    let out = ietk(&["iet", "eval", "--sigma", "2,1", "--a", "1,1", "--x", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "OutOfDomain");

    let out = ietk(&["surface", "suspend", "--sigma", "1,2", "--a", "1,1", "--b", "1,-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "NotIrreducible");

    let out = ietk(&["pair", "positive", "--sigma", "2,1", "--a", "1,1,1", "--b", "1,-1"]);
    assert_eq!(stderr_error(&out)["error"], "DimensionMismatch");
}

#[test]
fn require_positive_sets_the_exit_status() {
    let args = [
        "pair", "positive", "--sigma", "2,1", "--a", "1,1", "--b", "1,1", "--seeds", "4", "--orbit-len", "2000",
    ];
    let out = ietk(&args);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["status"], "NotPositive");

    let mut strict = args.to_vec();
    strict.push("--require-positive");
    assert_eq!(ietk(&strict).status.code(), Some(2));

    let out = ietk(&[
        "pair", "positive", "--sigma", "4,3,2,1", "--a", "1,phi,1,1", "--b", "3,1,-1,-3", "--require-positive",
        "--positivity-m-max", "200",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["status"], "Positive");
}

#[test]
fn mahler_scan_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = ietk(&[
            "--threads", threads, "exp", "mahler", "--d", "3", "--samples", "10", "--window", "0.5,1.5", "--seed", "7",
            "--cap", "12", "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(dir.path().join(name.replace(".csv", ".summary.json")).exists());
        fs::read(path).unwrap()
    };
    let first = run("a.csv", "1");
    assert_eq!(first, run("b.csv", "1"));
    assert_eq!(first, run("c.csv", "3"));
    let text = String::from_utf8(first).unwrap();
    assert!(text.starts_with("s,a_1,a_2,a_3,verdict,n,eps_n,n_eps_n,t,phi,classification\n"));
    assert_eq!(text.lines().count(), 1 + 10 * 9);
}

#[test]
fn printed_config_replays_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "exp", "mahler", "--d", "3", "--samples", "4", "--window", "1/2,3/2", "--seed", "11", "--cap", "8",
    ];
    let mut print = vec!["--print-config"];
    print.extend_from_slice(&args);
    let out = ietk(&print);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();

    let cfg = dir.path().join("run.json");
    fs::write(&cfg, &text).unwrap();
    let reprinted = ietk(&["--print-config", "run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(String::from_utf8(reprinted.stdout).unwrap(), text);

    let replay = ietk(&["run", "--config", cfg.to_str().unwrap()]);
    let direct = ietk(&args);
    assert!(replay.status.success());
    assert_eq!(replay.stdout, direct.stdout);
}

#[test]
fn surface_commands() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("q.svg");
    let out = ietk(&[
        "surface", "suspend", "--sigma", "4,3,2,1", "--a", "1,1,1,1", "--b", "3,1,-1,-3", "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert_eq!(stdout_json(&out)["area_exact"], "20");

    let out = ietk(&["surface", "flow", "--sigma", "2,1", "--a", "1,phi", "--b", "1,-1", "--h", "1/10"]);
    let v = stdout_json(&out);
    assert_eq!(v["sigma"], serde_json::json!([2, 1]));
    assert_eq!(v["a"], serde_json::json!(["11/10", "2/5+(1/2)*sqrt5"]));

    let out = ietk(&["surface", "phi", "--sigma", "2,1", "--a", "1,1", "--b", "1,-1"]);
    assert_eq!(stdout_json(&out)["phi"], "1");

    let rel = |t: &str| {
        ietk(&[
            "surface", "rel", "--sigma", "3,2,1", "--a", "1,1,1", "--b", "1,0,-1", "--rel-dir", "1,-1,1", "--t", t,
        ])
    };
    let out = rel("1/4");
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["area_exact"], "4");
    let out = rel("-2");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_error(&out)["error"], "LengthCollapse");

    let out = ietk(&["surface", "suspend", "--sigma", "2,1", "--a", "1,1", "--b", "1,-1", "--g", "1"]);
    assert!(out.status.success());
    let out = ietk(&["--exact", "surface", "suspend", "--sigma", "2,1", "--a", "1,1", "--b", "1,-1", "--g", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
