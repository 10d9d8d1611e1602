//! End-to-end tests of the `largeness` binary: exit codes, determinism and
//! the documented output formats.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_largeness"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn write_evens(dir: &Path) -> String {
    let elements: Vec<String> = (1..=60).map(|i| format!("\"{}\"", 2 * i)).collect();
    let json = format!(
        "{{\"universe\":\"naturals\",\"variant\":\"explicit_sorted\",\"elements\":[{}]}}",
        elements.join(",")
    );
    let path = dir.join("evens.json");
    fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn construct_then_verify_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["construct", "--theorem", "ip-star", "--poly", "n^2", "--cap", "3"],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");

    let out = run_in(dir.path(), &["verify", "result.json"]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("claims: 2/2 verified"), "{text}");
}

#[test]
fn construct_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = run_in(
            dir.path(),
            &[
                "construct",
                "--theorem",
                "central-star",
                "--poly",
                "n^2",
                "--cap",
                "3",
                "--out",
                name,
            ],
        );
        assert_eq!(exit_code(&out), 0, "{out:?}");
    }
    let a = fs::read(dir.path().join("a.json")).unwrap();
    let b = fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn witness_exit_codes_follow_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let evens = write_evens(dir.path());

    // 2 + 4 = 6 stays even: witness [2, 4], exit 0.
    let out = run_in(
        dir.path(),
        &["witness", "--kind", "ip", "--set", &evens, "--k", "2", "--bound", "100"],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("witness_found"), "{text}");
    assert!(text.contains("\"2\"") && text.contains("\"4\""), "{text}");

    // Odd + odd is even: no IP pair among odds, exit 1.
    let odds: Vec<String> = (0..50).map(|i| format!("\"{}\"", 2 * i + 1)).collect();
    let odds_json = format!(
        "{{\"universe\":\"naturals\",\"variant\":\"explicit_sorted\",\"elements\":[{}]}}",
        odds.join(",")
    );
    fs::write(dir.path().join("odds.json"), odds_json).unwrap();
    let out = run_in(
        dir.path(),
        &["witness", "--kind", "ip", "--set", "odds.json", "--k", "2", "--bound", "99"],
    );
    assert_eq!(exit_code(&out), 1, "{out:?}");
    assert!(stdout(&out).contains("exhausted"));

    // A starved budget is inconclusive, exit 2.
    let out = bin()
        .current_dir(dir.path())
        .env("LARGENESS_BUDGET", "1")
        .args(["witness", "--kind", "ip", "--set", &evens, "--k", "3", "--bound", "100"])
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2, "{out:?}");
}

#[test]
fn lattice_queries() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["lattice", "--implies", "delta-star", "central-star"],
    );
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "true");

    let out = run_in(dir.path(), &["lattice", "--implies", "syndetic", "thick"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout(&out).trim(), "false");

    let out = run_in(dir.path(), &["lattice", "--edges"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("delta-star -> ip-star"));

    let out = run_in(dir.path(), &["lattice", "--implies", "nonsense", "thick"]);
    assert_eq!(exit_code(&out), 64);
}

#[test]
fn malformed_inputs_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "garbage").unwrap();
    let out = run_in(dir.path(), &["verify", "bad.json"]);
    assert_eq!(exit_code(&out), 64);

    // Degree-1 polynomial violates the construction precondition.
    let out = run_in(
        dir.path(),
        &["construct", "--theorem", "ip-star", "--poly", "n", "--cap", "3"],
    );
    assert_eq!(exit_code(&out), 64);

    // Constant terms are rejected by the expression parser.
    let out = run_in(
        dir.path(),
        &["construct", "--theorem", "ip-star", "--poly", "n^2+1", "--cap", "3"],
    );
    assert_eq!(exit_code(&out), 64);
}

#[test]
fn fiber_exports_csv_and_bitmap() {
    let dir = tempfile::tempdir().unwrap();
    let evens = write_evens(dir.path());
    let out = run_in(
        dir.path(),
        &[
            "fiber",
            "--set",
            &evens,
            "--poly",
            "n^2",
            "--rect",
            "1..4,0..3",
            "--bitmap",
            "fiber.pbm",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let expected = "1,1\n1,3\n2,0\n2,2\n3,1\n3,3\n4,0\n4,2\n";
    assert_eq!(stdout(&out), expected);

    let pbm = fs::read_to_string(dir.path().join("fiber.pbm")).unwrap();
    let mut lines = pbm.lines();
    assert_eq!(lines.next(), Some("P1"));
    assert_eq!(lines.next(), Some("4 4"));
    // Top row is n = 3: members at m = 1 and m = 3.
    assert_eq!(lines.next(), Some("1 0 1 0"));
}

#[test]
fn verify_writes_machine_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["construct", "--theorem", "delta-star", "--poly", "n^2", "--cap", "6"],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let out = run_in(
        dir.path(),
        &["verify", "result.json", "--report", "report.json"],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["construction"], "delta-star");
    assert_eq!(report["summary"]["violated"], 0);
    assert_eq!(report["summary"]["total"], report["claims"].as_array().unwrap().len());
}

#[test]
fn remark2_requires_its_set_and_then_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["construct", "--theorem", "remark2", "--poly", "-n^2", "--cap", "100"],
    );
    assert_eq!(exit_code(&out), 64, "--set is mandatory for remark2");

    let evens = write_evens(dir.path());
    let out = run_in(
        dir.path(),
        &[
            "construct",
            "--theorem",
            "remark2",
            "--poly",
            "-n^2",
            "--cap",
            "100",
            "--m-cap",
            "10",
            "--set",
            &evens,
        ],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let out = run_in(dir.path(), &["verify", "result.json"]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
}

#[test]
fn thick_and_remark1_constructions_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (theorem, extra) in [("thick", vec!["--poly", "n^2", "--cap", "4"]), ("remark1", vec!["--cap", "4"])] {
        let mut args = vec!["construct", "--theorem", theorem, "--out", "r.json"];
        args.extend(extra);
        let out = run_in(dir.path(), &args);
        assert_eq!(exit_code(&out), 0, "{theorem}: {out:?}");
        let out = run_in(dir.path(), &["verify", "r.json"]);
        assert_eq!(exit_code(&out), 0, "{theorem}: {out:?}");
    }
}

#[test]
fn verify_handles_empty_and_inconclusive_claims() {
    let dir = tempfile::tempdir().unwrap();
    let skeleton = |claims: &str| {
        format!(
            concat!(
                "{{\"name\":\"delta-star\",\"universe\":\"integers\",",
                "\"plane_universe\":\"integers_squared\",",
                "\"polynomials\":[{{\"coeffs\":[\"0\",\"1\"]}}],",
                "\"parameters\":{{}},\"generators\":{{\"type\":\"none\"}},",
                "\"claims\":[{claims}],",
                "\"provenance\":{{\"artifact\":\"largeness\",\"version\":\"0.1.0\"}}}}"
            ),
            claims = claims
        )
    };

    fs::write(dir.path().join("empty.json"), skeleton("")).unwrap();
    let out = run_in(dir.path(), &["verify", "empty.json"]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("no claims"));

    // x^2 - y^2 = 16 has 2 solutions in the box |x|, |y| <= 4 but none in
    // |x|, |y| <= 2, so the count has not stabilized at bound 4.
    fs::write(
        dir.path().join("unstable.json"),
        skeleton("{\"check\":\"solution_count_stable\",\"difference\":\"16\",\"bound\":4}"),
    )
    .unwrap();
    let out = run_in(dir.path(), &["verify", "unstable.json"]);
    assert_eq!(exit_code(&out), 2, "{out:?}");
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn syndetic_d1_construction_verifies() {
    let dir = tempfile::tempdir().unwrap();
    // Multiples of 3 over the integers, wide enough for n^3 over the rect.
    let elements: Vec<String> = (-3000..=3000).map(|i| format!("\"{}\"", 3 * i)).collect();
    let json = format!(
        "{{\"universe\":\"integers\",\"variant\":\"explicit_sorted\",\"elements\":[{}]}}",
        elements.join(",")
    );
    fs::write(dir.path().join("threes.json"), json).unwrap();
    let out = run_in(
        dir.path(),
        &[
            "construct",
            "--theorem",
            "syndetic-d1",
            "--poly",
            "n^3",
            "--set",
            "threes.json",
            "--rect",
            "-20..20,-20..20",
        ],
    );
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let out = run_in(dir.path(), &["verify", "result.json"]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("max slice gap 3"));
}
