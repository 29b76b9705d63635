use std::path::{Path, PathBuf};
use std::process::Command;

use bbdigraph::catalog::{build_exception, ExceptionName};
use bbdigraph::cli::{run, Outcome, EXIT_ERROR, EXIT_FAIL, EXIT_OK};
use bbdigraph::format::{parse, render};
use bbdigraph::BalancedBipartiteDigraph;

fn bbd(args: &[&str]) -> Outcome {
    run(std::iter::once("bbd").chain(args.iter().copied()))
}

fn write_digraph(dir: &Path, name: &str, d: &BalancedBipartiteDigraph) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, render(d)).unwrap();
    path
}

#[test]
fn hamilton_on_h3_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_digraph(dir.path(), "h3.bbd", &build_exception(ExceptionName::H3));
    let out = bbd(&["hamilton", p.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAIL);
    assert_eq!(out.stdout, "no hamiltonian cycle\n");

    let k = write_digraph(dir.path(), "k3.bbd", &BalancedBipartiteDigraph::complete(3).unwrap());
    let out = bbd(&["hamilton", k.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "hamiltonian cycle: x0 y0 x1 y1 x2 y2\n");
}

#[test]
fn check_b1_on_complete() {
    let dir = tempfile::tempdir().unwrap();
    let k = write_digraph(dir.path(), "k3.bbd", &BalancedBipartiteDigraph::complete(3).unwrap());
    let out = bbd(&["check", k.to_str().unwrap(), "--condition", "b1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "condition b1: holds\n");

    let h1 = write_digraph(dir.path(), "h1.bbd", &build_exception(ExceptionName::H1));
    let out = bbd(&["check", h1.to_str().unwrap(), "--condition", "b1"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("{x0, x1}"));

    let out = bbd(&["--json", "check", h1.to_str().unwrap(), "--condition", "dompairs3a"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["report"]["holds"], true);
}

#[test]
fn json_never_changes_the_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    for n in ExceptionName::ALL {
        let p = write_digraph(dir.path(), &format!("{n}.bbd"), &build_exception(n));
        let p = p.to_str().unwrap();
        for args in [
            vec!["hamilton", p],
            vec!["factor", p],
            vec!["check", p, "--condition", "sharp"],
            vec!["check", p, "--condition", "nonadjacent3a"],
        ] {
            let text = bbd(&args);
            let mut with_json = vec!["--json"];
            with_json.extend(&args);
            let json = bbd(&with_json);
            assert_eq!(text.code, json.code, "{args:?}");
            serde_json::from_str::<serde_json::Value>(&json.stdout).unwrap();
        }
    }
}

#[test]
fn factor_reports_hall_violation() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_digraph(dir.path(), "h2.bbd", &build_exception(ExceptionName::H2));
    let out = bbd(&["factor", p.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("hall violation V1toV2: {x0, x1}"), "{}", out.stdout);

    let p = write_digraph(dir.path(), "h3.bbd", &build_exception(ExceptionName::H3));
    let out = bbd(&["factor", p.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "cycle factor: [x0 y1 x1 y2] [x2 y0]\n");
}

#[test]
fn catalog_emits_bbd() {
    for n in ExceptionName::ALL {
        let out = bbd(&["catalog", &n.to_string()]);
        assert_eq!(out.code, EXIT_OK);
        assert_eq!(parse(&out.stdout).unwrap(), build_exception(n));
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.bbd");
    let out = bbd(&["catalog", "h1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse(&text).unwrap(), build_exception(ExceptionName::H1));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(bbd(&[]).code, EXIT_ERROR);
    assert_eq!(bbd(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["catalog", "h9"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["hamilton", "/nonexistent/file.bbd"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["verify", "--theorem", "main", "--a", "4", "--exhaustive"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["verify", "--theorem", "main", "--a", "2"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["explore", "--a", "4", "--k", "3", "--samples", "1"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["--help"]).code, EXIT_OK);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.bbd");
    std::fs::write(&bad, "a 2\n10\n0\n\n10\n01\n").unwrap();
    let out = bbd(&["hamilton", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("line 3"), "{}", out.stderr);

    let one = dir.path().join("one.bbd");
    std::fs::write(&one, "a 1\n1\n\n1\n").unwrap();
    assert_eq!(bbd(&["check", one.to_str().unwrap(), "--condition", "b1"]).code, EXIT_ERROR);
    assert_eq!(bbd(&["hamilton", one.to_str().unwrap()]).code, EXIT_OK);
}

#[test]
fn verify_exhaustive_a2() {
    let out = bbd(&["--json", "verify", "--theorem", "main", "--a", "2", "--exhaustive", "--workers", "2"]);
    assert_eq!(out.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["generated"], 256);
    assert_eq!(v["counterexamples"], serde_json::json!([]));
    assert_eq!(v["mode"]["kind"], "exhaustive");
}

#[test]
fn random_commands_echo_their_seed_and_reproduce() {
    let args = [
        "--json", "verify", "--theorem", "sharp", "--a", "4", "--random", "--samples", "300",
    ];
    let first = bbd(&args);
    assert_eq!(first.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&first.stdout).unwrap();
    let seed = v["mode"]["seed"].as_u64().unwrap();
    let mut again: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    again.extend(["--seed".into(), seed.to_string(), "--workers".into(), "3".into()]);
    let second = run(std::iter::once("bbd".to_string()).chain(again));
    assert_eq!(first.stdout, second.stdout);

    let e1 = bbd(&["--json", "explore", "--a", "4", "--k", "2", "--samples", "200"]);
    let v: serde_json::Value = serde_json::from_str(&e1.stdout).unwrap();
    let seed = v["seed"].as_u64().unwrap().to_string();
    let e2 = bbd(&["--json", "explore", "--a", "4", "--k", "2", "--samples", "200", "--seed", &seed]);
    assert_eq!(e1.stdout, e2.stdout);
    assert_eq!(e1.code, EXIT_OK);
}

#[test]
fn quiet_keeps_only_the_exit_code() {
    let out = bbd(&["--quiet", "verify", "--theorem", "prop1", "--a", "2", "--exhaustive"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty() && out.stderr.is_empty());
}

#[test]
fn binary_runs_and_honours_env_workers() {
    let exe = env!("CARGO_BIN_EXE_bbd");
    let out = Command::new(exe)
        .args(["--json", "verify", "--theorem", "lemma1", "--a", "2", "--exhaustive"])
        .env("BBD_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generated"], 256);

    let out = Command::new(exe).args(["catalog", "h2x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let d = parse(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(d, build_exception(ExceptionName::H2X));

    let out = Command::new(exe)
        .args(["verify", "--theorem", "main", "--a", "2", "--exhaustive"])
        .env("BBD_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
