use std::path::PathBuf;
use std::process::{Command, Output};

use alpha_ci::sullivan::ScanReport;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_alpha-ci"));
    c.env_remove("ALPHA_CI_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("alpha-ci-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn alpha_human_output() {
    let o = run(&["alpha", "--n", "5", "--d", "3,3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("alpha = "), "{s}");
    assert!(s.contains("m = "), "{s}");
    assert!(s.contains("backends: "), "{s}");

    let o = run(&["alpha", "--n", "1", "--d", "3", "--all-backends"]);
    let s = stdout(&o);
    assert!(s.starts_with("alpha = 1\n"), "{s}");
    for name in ["sign-sum", "hilbert", "partition-sum", "fr", "curve-closed-form"] {
        assert!(s.contains(&format!("  {name}: 1")), "missing {name}: {s}");
    }
}

#[test]
fn worked_examples() {
    let cases: &[(&[&str], &str)] = &[
        (&["hilbert", "--n", "1", "--d", "2,2", "--order", "5"], "1 4 8 12 16 20\n"),
        (&["fr", "--r", "5"], "f_5 = T^4 + T^2 + 1\n"),
        (&["euler", "--n", "2", "--d", "4"], "euler = 24\n"),
        (&["ahat", "--n", "2", "--d", "4"], "ahat = 2\n"),
        (&["spin", "--n", "1", "--d", "3"], "spin, m = 0\n"),
        (&["spin", "--n", "2", "--d", "3"], "not spin\n"),
    ];
    for (args, prefix) in cases {
        let o = run(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).starts_with(prefix), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn json_flag_emits_parseable_json() {
    for args in [
        &["alpha", "--n", "5", "--d", "3,3", "--json"][..],
        &["alpha", "--n", "2", "--d", "3,-5", "--abstract", "--json"],
        &["ahat", "--n", "4", "--d", "6", "--json"],
        &["profile", "--n", "5", "--d", "3,3", "--json"],
        &["fr", "--r", "7", "--json"],
    ] {
        let o = run(args);
        assert!(o.status.success(), "{args:?}: {}", stderr(&o));
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn invalid_input_exits_one_with_one_line() {
    for args in [
        &["alpha", "--n", "3", "--d", "3"][..],
        &["alpha", "--n", "5", "--d", "2"],
        &["alpha", "--n", "5", "--d", "0,3"],
        &["alpha", "--n", "5", "--d", "x"],
        &["ahat", "--n", "3", "--d", "4"],
        &["frobnicate"],
        &["scan", "--n", "4", "--max-k", "2", "--max-degree", "4"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let e = stderr(&o);
        assert_eq!(e.trim_end().lines().count(), 1, "{args:?}: {e}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn scan_writes_report_that_round_trips() {
    let json = scratch("out.json");
    let csv = scratch("out.csv");
    let o = run(&[
        "scan",
        "--n",
        "5",
        "--max-k",
        "3",
        "--max-degree",
        "10",
        "--workers",
        "2",
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("violations: 0"));

    let text = std::fs::read_to_string(&json).unwrap();
    let report = ScanReport::from_json(&text).unwrap();
    assert_eq!(report.to_json().unwrap() + "\n", text);
    assert_eq!(report.timing.workers, 2);
    assert!(report.violations.is_empty());

    let rows = std::fs::read_to_string(&csv).unwrap();
    let mut lines = rows.lines();
    assert_eq!(lines.next(), Some("key,d_tot,size,members,alpha,constant_alpha"));
    assert_eq!(lines.count(), report.groups.len());
}

#[test]
fn workers_default_from_environment() {
    let json = scratch("env.json");
    let o = bin()
        .args(["scan", "--n", "1", "--max-k", "2", "--max-degree", "9", "--by-total-degree"])
        .args(["--json", json.to_str().unwrap()])
        .env("ALPHA_CI_WORKERS", "3")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let report = ScanReport::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.timing.workers, 3);
    assert!(report.nontrivial_groups() > 0);
}
