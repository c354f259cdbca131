//! End-to-end tests against the compiled binary: exit codes, report
//! round-trips, suite determinism, and the error channels.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cizero_cli::report::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cizero"))
}

fn workspace_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const TWO_CUBES: &str = r#"{"field":"Q","vars":["x","y"],"relations":["x^3","y^3"]}"#;

#[test]
fn passing_check_exits_zero() {
    let ring = workspace_path("corpus/rings/xy_cubes.json");
    let mat = workspace_path("corpus/matrices/xy_cubes_wiebe1.json");
    let out = run(&[
        "check",
        "wiebe",
        "--ring",
        ring.to_str().unwrap(),
        "--matrix",
        mat.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("pass"));
    assert!(stdout(&out).contains("0 failure(s)"));
}

#[test]
fn false_verdict_needs_assert_to_change_exit() {
    let ring = workspace_path("corpus/rings/three_squares.json");
    let args = [
        "ci0",
        "ann",
        "--ring",
        ring.to_str().unwrap(),
        "--elem",
        "x + y + z",
    ];
    let plain = run(&args);
    assert_eq!(code(&plain), 0, "report is still produced: {}", stderr(&plain));
    assert!(stdout(&plain).contains("verdict=false"));

    let mut strict_args = vec!["--assert"];
    strict_args.extend_from_slice(&args);
    let strict = run(&strict_args);
    assert_eq!(code(&strict), 1);
}

#[test]
fn parse_error_exits_two() {
    let ring = workspace_path("corpus/rings/two_cubes.json");
    let out = run(&[
        "ideal",
        "ann",
        "--ring",
        ring.to_str().unwrap(),
        "--elem",
        "x +* y",
    ]);
    assert_eq!(code(&out), 2);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn unknown_variable_exits_two() {
    let out = run(&["ideal", "socle", "--ring", TWO_CUBES, "--gens", "z"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("z"));
}

#[test]
fn engine_error_on_command_exits_two() {
    // A start ideal that is not a zero-dimensional complete intersection
    // is a precondition failure, not a false verdict.
    let out = run(&[
        "probe",
        "maxchain",
        "--ring",
        TWO_CUBES,
        "--start",
        "x^2 + y^2",
    ]);
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("no verdict"));
}

#[test]
fn clap_errors_exit_two() {
    let out = run(&["definitely-not-a-command"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_report_round_trips() {
    let ring = workspace_path("corpus/rings/xy_cubes.json");
    let mat = workspace_path("corpus/matrices/xy_cubes_wiebe2.json");
    let out = run(&[
        "--json",
        "check",
        "nice",
        "--ring",
        ring.to_str().unwrap(),
        "--matrix",
        mat.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let report: Report = serde_json::from_str(&text).expect("report parses");
    assert!(report.all_passed);
    assert_eq!(report.assertions, 1);
    let again: Report =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn expect_object_checks_fields() {
    let ring = workspace_path("corpus/rings/xy_cubes.json");
    let mat = workspace_path("corpus/matrices/xy_cubes_wiebe1.json");
    let base = [
        "check",
        "wiebe",
        "--ring",
        ring.to_str().unwrap(),
        "--matrix",
        mat.to_str().unwrap(),
    ];

    let mut good = vec!["--assert", "--expect", r#"{"det": "y^3"}"#];
    good.extend_from_slice(&base);
    assert_eq!(code(&run(&good)), 0);

    let mut bad = vec!["--assert", "--expect", r#"{"det": "x"}"#];
    bad.extend_from_slice(&base);
    assert_eq!(code(&run(&bad)), 1);

    let mut malformed = vec!["--expect", "{not json"];
    malformed.extend_from_slice(&base);
    assert_eq!(code(&run(&malformed)), 2);
}

#[test]
fn inline_ring_argument_works() {
    let out = run(&["ideal", "socle", "--ring", TWO_CUBES]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("x^2*y^2"));
}

#[test]
fn shipped_suite_passes() {
    let dir = workspace_path("corpus/scenarios");
    let out = run(&["suite", "run", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("0 failure(s)"));
}

#[test]
fn suite_json_is_deterministic() {
    let dir = workspace_path("corpus/scenarios");
    let args = ["--json", "suite", "run", dir.to_str().unwrap()];
    let first = run(&args);
    assert_eq!(code(&first), 0);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");

    let serial = bin()
        .args(args)
        .env("CIZERO_THREADS", "1")
        .output()
        .expect("binary runs");
    assert_eq!(
        first.stdout, serial.stdout,
        "thread count must not change the report"
    );
}

#[test]
fn corrupted_scenario_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\n  \"name\": \"broken\",\n  \"ring\": oops\n}\n").unwrap();
    let out = run(&["suite", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("broken.json"), "stderr: {}", err);
    assert!(err.contains("line 3"), "stderr: {}", err);
}

#[test]
fn empty_suite_warns_and_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["suite", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no scenario files"));
}

#[test]
fn failing_scenario_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = format!(
        r#"{{
  "name": "wrong socle",
  "ring": {},
  "assertions": [
    {{ "op": "socle", "expected": {{ "generators": ["x"] }} }}
  ]
}}"#,
        TWO_CUBES
    );
    std::fs::write(dir.path().join("wrong.json"), scenario).unwrap();
    let out = run(&["suite", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn expected_engine_error_passes_in_suite() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = format!(
        r#"{{
  "name": "probe from a non-complete-intersection start",
  "ring": {},
  "assertions": [
    {{
      "op": "probe_maxchain",
      "inputs": {{ "start": ["x^2 + y^2"] }},
      "expected": {{ "error": "precondition" }}
    }}
  ]
}}"#,
        TWO_CUBES
    );
    std::fs::write(dir.path().join("probe.json"), scenario).unwrap();
    let out = run(&["suite", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stdout: {}\nstderr: {}", stdout(&out), stderr(&out));
}

#[test]
fn unknown_op_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = format!(
        r#"{{
  "name": "bad op",
  "ring": {},
  "assertions": [ {{ "op": "frobnicate" }} ]
}}"#,
        TWO_CUBES
    );
    std::fs::write(dir.path().join("bad_op.json"), scenario).unwrap();
    let out = run(&["suite", "run", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("frobnicate"));
}

#[test]
fn seed_flag_reaches_seeded_operations() {
    // Both seeds must reach a verdict; the reports record the seed they used.
    for seed in ["0", "7"] {
        let out = run(&[
            "--json",
            "--seed",
            seed,
            "decompose",
            "matrix",
            "--ring",
            r#"{"field":{"gf":7},"vars":["x","y"],"relations":["x^2","y^2"]}"#,
            "--matrix",
            r#"[["x","-y"],["y","x + y"]]"#,
            "--budget",
            "10000",
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
        let report: Report = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report.scenarios[0].seed, seed.parse::<u64>().unwrap());
        assert!(report.all_passed);
    }
}
