use std::path::PathBuf;
use std::process::Command;

use pathbisim::fps::format::{parse_fps, write_fps, FpsOptions};
use pathbisim::lts::aut::{parse_aut, write_aut, AutOptions};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

/// Runs the binary; returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    run_with_threads(args, None)
}

fn run_with_threads(args: &[&str], threads: Option<usize>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pathbisim"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t.to_string());
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn check_exit_codes() {
    let abcde = f("abcde.aut");
    let (code, out, _) = run(&["check", &abcde, "--semantics", "weak", "--pair", "A", "B"]);
    assert_eq!((code, out.as_str()), (0, "equivalent\n"));
    let (code, out, _) = run(&[
        "check",
        &abcde,
        "--semantics",
        "branching",
        "--pair",
        "A",
        "B",
    ]);
    assert_eq!(code, 1);
    assert!(out.starts_with("inequivalent\n"));
    assert!(out.contains("signature path"));
    let weak_only = f("weak_only.aut");
    let (code, _, _) = run(&[
        "check",
        &weak_only,
        "--semantics",
        "branching",
        "--pair",
        "x1",
        "y1",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&[
        "check",
        &weak_only,
        "--semantics",
        "weak",
        "--pair",
        "x1",
        "y1",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn check_reports_a_distinguishing_fragment_in_json() {
    let (code, out, _) = run(&[
        "check",
        &f("abcde.aut"),
        "--semantics",
        "eta",
        "--pair",
        "A",
        "B",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(v["distinguishing"]["path"]
        .as_str()
        .unwrap()
        .starts_with('('));
}

#[test]
fn fps_check_names_differing_probability() {
    let (code, out, _) = run(&["check", &f("tau_loop.fps"), "--pair", "x1", "x2"]);
    assert_eq!(code, 1);
    assert!(out.contains("P(x1, τ*"), "{out}");
    let (code, _, _) = run(&["check", &f("tau_loop.fps"), "--pair", "x1", "y1"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    let abcde = f("abcde.aut");
    for args in [
        vec![
            "check",
            abcde.as_str(),
            "--semantics",
            "weak",
            "--pair",
            "A",
            "Q",
        ],
        vec!["check", abcde.as_str(), "--pair", "A", "B"],
        vec![
            "prob-reach",
            abcde.as_str(),
            "--from",
            "A",
            "--action",
            "a",
            "--targets",
            "D",
        ],
        vec!["audit", abcde.as_str()],
        vec!["partition", "/nonexistent/x.aut", "--semantics", "weak"],
        vec!["partition", abcde.as_str(), "--semantics", "sideways"],
        vec![
            "check",
            f("tau_loop.fps").leak(),
            "--semantics",
            "weak",
            "--pair",
            "x1",
            "y1",
        ],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn partitions() {
    let (_, out, _) = run(&["partition", &f("abcde.aut"), "--semantics", "delay"]);
    assert_eq!(out, "{A,B},{C},{D},{E}\n");
    let (_, out, _) = run(&["partition", &f("single.aut"), "--semantics", "branching"]);
    assert_eq!(out, "{0}\n");
    let (_, out, _) = run(&["partition", &f("tau_loop.fps"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 3);
    assert!(v["signatures"][0]
        .as_array()
        .unwrap()
        .iter()
        .all(|e| e["probability"].as_str().unwrap().contains('/')));
}

#[test]
fn prob_reach_prints_fractions() {
    let tau_loop = f("tau_loop.fps");
    let (code, out, _) = run(&[
        "prob-reach",
        &tau_loop,
        "--from",
        "x1",
        "--action",
        "b",
        "--targets",
        "x4",
    ]);
    assert_eq!((code, out.as_str()), (0, "1/2\n"));
    let (_, out, _) = run(&[
        "prob-reach",
        &tau_loop,
        "--from",
        "x1'",
        "--action",
        "b",
        "--targets",
        "x4'",
    ]);
    assert_eq!(out, "1/2\n");
    let (_, out, _) = run(&[
        "prob-reach",
        &tau_loop,
        "--from",
        "x1",
        "--action",
        "eps",
        "--targets",
        "x1",
    ]);
    assert_eq!(out, "1/1\n");
    let (_, out, _) = run(&[
        "prob-reach",
        &tau_loop,
        "--from",
        "x1",
        "--action",
        "tau",
        "--targets",
        "x2,x3",
    ]);
    assert_eq!(out, "1/2\n");
    let (code, _, _) = run(&[
        "prob-reach",
        &tau_loop,
        "--from",
        "x1",
        "--action",
        "zz",
        "--targets",
        "x4",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn alpha_dump_rows() {
    let (_, out, _) = run(&[
        "alpha-dump",
        &f("abcde.aut"),
        "--semantics",
        "delay",
        "--state",
        "E",
        "--depth",
        "2",
    ]);
    assert_eq!(out, "(E)\n(E,a,D)\n");
    let (_, out, _) = run(&["alpha-dump", &f("abcde.aut"), "--state", "D"]);
    assert_eq!(
        out,
        "branching:\n  (D)\nweak:\n  (D)\neta:\n  (D)\ndelay:\n  (D)\n"
    );
}

#[test]
fn audit_passes_on_fixture() {
    let (code, out, _) = run(&[
        "audit",
        &f("tau_loop.fps"),
        "--seed",
        "7",
        "--trials",
        "200",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    assert!(out.lines().all(|l| l.ends_with("pass")));
    let (_, out, _) = run(&[
        "audit",
        &f("split_tau.fps"),
        "--trials",
        "20",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["failures"] == 0));
}

#[test]
fn paths_listing() {
    let (_, out, _) = run(&[
        "paths",
        &f("tau_loop.fps"),
        "--state",
        "x2'",
        "--depth",
        "3",
    ]);
    assert_eq!(out, "(x2')        1/1\n(x2',b,x4')  1/1\n");
    let (_, out, _) = run(&["paths", &f("abcde.aut"), "--state", "E", "--depth", "4"]);
    assert_eq!(out, "(E)\n(E,a,D)\n");
}

#[test]
fn minimize_writes_quotient_and_map() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("abcde.aut");
    std::fs::copy(fixture("abcde.aut"), &input).unwrap();
    let (code, _, _) = run(&["minimize", input.to_str().unwrap(), "--semantics", "weak"]);
    assert_eq!(code, 0);
    let quotient = std::fs::read_to_string(dir.path().join("abcde.min.aut")).unwrap();
    let lts = parse_aut(&quotient, &AutOptions::default()).unwrap();
    assert_eq!(lts.num_states(), 3);
    let map: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("abcde.min.aut.map.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(map["B"], "A");

    let out = dir.path().join("q.fps");
    let (code, _, _) = run(&[
        "minimize",
        &f("tau_loop.fps"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let q = parse_fps(
        &std::fs::read_to_string(&out).unwrap(),
        &FpsOptions::default(),
    )
    .unwrap();
    assert_eq!(q.num_states(), 3);
    assert!(dir.path().join("q.fps.map.json").exists());
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "abcde.aut",
        "weak_only.aut",
        "tau_then_a.aut",
        "inert_tau.aut",
        "single.aut",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let lts = parse_aut(&text, &AutOptions::default()).unwrap();
        let again = parse_aut(&write_aut(&lts), &AutOptions::default()).unwrap();
        assert!(again.same_named_system(&lts), "{name}");
        assert_eq!(again.state_names(), lts.state_names(), "{name}");
    }
    for name in ["tau_loop.fps", "split_tau.fps"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let fps = parse_fps(&text, &FpsOptions::default()).unwrap();
        assert_eq!(
            parse_fps(&write_fps(&fps), &FpsOptions::default()).unwrap(),
            fps,
            "{name}"
        );
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let cases: Vec<Vec<String>> = vec![
        vec![
            "partition".into(),
            f("abcde.aut"),
            "--semantics".into(),
            "eta".into(),
            "--format".into(),
            "json".into(),
        ],
        vec![
            "audit".into(),
            f("tau_loop.fps"),
            "--seed".into(),
            "3".into(),
            "--trials".into(),
            "50".into(),
        ],
        vec![
            "check".into(),
            f("tau_loop.fps"),
            "--pair".into(),
            "x1".into(),
            "x2".into(),
        ],
        vec![
            "alpha-dump".into(),
            f("abcde.aut"),
            "--state".into(),
            "C".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let one = run_with_threads(&args, Some(1));
        assert_eq!(one, run_with_threads(&args, Some(4)), "{args:?}");
        assert_eq!(one, run_with_threads(&args, Some(1)), "{args:?}");
    }
}

#[test]
fn custom_tau_label_and_explicit_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sys.txt");
    std::fs::write(&path, "des (0, 2, 3)\n(0, \"silent\", 1)\n(1, \"a\", 2)\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, _, _) = run(&["partition", p, "--semantics", "weak"]);
    assert_eq!(code, 2);
    let (_, out, _) = run(&[
        "partition",
        p,
        "--input-format",
        "aut",
        "--tau-label",
        "silent",
        "--semantics",
        "branching",
    ]);
    assert_eq!(out, "{0,1},{2}\n");
}
