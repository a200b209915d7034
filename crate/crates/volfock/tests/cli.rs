//! End-to-end tests of the `volfock` binary: exit codes, artifact layout,
//! determinism of the emitted JSON/CSV bytes, and the no-partial-files
//! guarantee on errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_volfock"))
}

/// Fresh scratch directory under the system temp root, cleared on entry.
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("volfock_cli_{tag}_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn weight_check_passes_for_a_bare_weight_spec() {
    let dir = scratch("wc_bare");
    let cfg = write_file(&dir, "weight.json", r#"{"family":"exp_power","alpha":1,"p":2}"#);
    let out_dir = dir.join("out");

    let out = bin()
        .args(["weight-check", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let text = stdout_of(&out);
    for check in [
        "weight_axioms",
        "differentiation_condition",
        "target_weight_conditions",
        "essentialness",
    ] {
        assert!(
            text.contains(&format!("PASS weight {check}")),
            "missing line for {check} in: {text}"
        );
        let report = out_dir.join(format!("weight_{check}.json"));
        let body = fs::read_to_string(&report).unwrap();
        assert!(body.contains("\"passed\": true"), "{}", report.display());
    }
}

#[test]
fn weight_check_fails_for_a_non_essential_weight() {
    let dir = scratch("wc_fail");
    let cfg = write_file(&dir, "weight.json", r#"{"family":"log_power","p":1.5}"#);
    let out = bin()
        .args(["weight-check", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    // the essentialness check fails, so the overall run reports failure
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL weight essentialness"));

    let body = fs::read_to_string(dir.join("out/weight_essentialness.json")).unwrap();
    assert!(body.contains("\"passed\": false"));
    assert!(body.contains("derivative_lower_bound"));
}

fn classify_config(out_dir: &Path, coeffs: &str) -> String {
    format!(
        r#"{{
  "source_weight": {{"family": "exp_power", "alpha": 1, "p": 2}},
  "symbol": {{"coeffs": {coeffs}}},
  "output_dir": "{}"
}}"#,
        out_dir.display()
    )
}

#[test]
fn classify_reports_the_expected_verdicts() {
    let dir = scratch("classify");
    for (coeffs, expect) in [
        ("[[0,0],[1,0]]", "compact"),
        ("[[0,0],[0,0],[1,0]]", "bounded"),
        ("[[0,0],[0,0],[0,0],[1,0]]", "unbounded"),
    ] {
        let out_dir = dir.join(expect);
        let cfg = write_file(&dir, "run.json", &classify_config(&out_dir, coeffs));
        let out = bin()
            .args(["classify", "--config"])
            .arg(&cfg)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        assert!(
            stdout_of(&out).contains(&format!("verdict: {expect}")),
            "stdout: {}",
            stdout_of(&out)
        );

        let json = fs::read_to_string(out_dir.join("classification.json")).unwrap();
        assert!(json.contains(&format!("\"verdict\": \"{expect}\"")));
        let csv = fs::read_to_string(out_dir.join("curve.csv")).unwrap();
        assert!(csv.starts_with("r,log_q\n"));
        assert_eq!(csv.lines().count(), 65, "64 samples plus header");
    }
}

#[test]
fn classify_outputs_are_byte_identical_across_runs() {
    let dir = scratch("determinism");
    let mut artifacts: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
    for run in 0..2 {
        let out_dir = dir.join(format!("run{run}"));
        let cfg = write_file(&dir, "run.json", &classify_config(&out_dir, "[[0,0],[0,2.5]]"));
        let out = bin()
            .args(["classify", "--config"])
            .arg(&cfg)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        artifacts.push((
            fs::read(out_dir.join("classification.json")).unwrap(),
            fs::read(out_dir.join("curve.csv")).unwrap(),
        ));
    }
    assert_eq!(artifacts[0].0, artifacts[1].0, "classification.json drifted");
    assert_eq!(artifacts[0].1, artifacts[1].1, "curve.csv drifted");
}

#[test]
fn classify_multiplier_between_distinct_spaces() {
    let dir = scratch("mult");
    let out_dir = dir.join("out");
    let cfg = write_file(
        &dir,
        "run.json",
        &format!(
            r#"{{
  "source_weight": {{"family": "exp_power", "alpha": 1, "p": 1}},
  "target_weight": {{"family": "exp_power", "alpha": 1, "p": 2}},
  "symbol": {{"coeffs": [[1,0]]}},
  "output_dir": "{}"
}}"#,
            out_dir.display()
        ),
    );
    let out = bin()
        .args(["classify", "--operator", "mult", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("verdict: compact"));
}

#[test]
fn malformed_config_exits_two_and_writes_nothing() {
    let dir = scratch("badcfg");
    let out_dir = dir.join("out");

    // unknown field: the error must name it
    let cfg = write_file(
        &dir,
        "bad.json",
        &format!(
            r#"{{"source_weight": {{"family": "exp_power", "alpha": 1, "p": 2}},
                "weird_knob": 3, "output_dir": "{}"}}"#,
            out_dir.display()
        ),
    );
    let out = bin()
        .args(["classify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("weird_knob"), "stderr: {}", stderr_of(&out));
    assert!(!out_dir.exists(), "error run must not create artifacts");

    // invalid weight parameter
    let cfg = write_file(
        &dir,
        "badparam.json",
        r#"{"source_weight": {"family": "exp_power", "alpha": -1, "p": 2},
            "symbol": {"coeffs": [[0,0],[1,0]]}}"#,
    );
    let out = bin()
        .args(["classify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // bad grid range
    let cfg = write_file(
        &dir,
        "badgrid.json",
        r#"{"source_weight": {"family": "exp_power", "alpha": 1, "p": 2},
            "symbol": {"coeffs": [[0,0],[1,0]]},
            "grid": {"r_min": 5, "r_max": 2}}"#,
    );
    let out = bin()
        .args(["classify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("r_max"));
}

#[test]
fn failed_hypothesis_exits_four() {
    let dir = scratch("hypfail");
    // this weight is valid to construct but decays too slowly for the
    // sampled decay axioms, so classification refuses to proceed
    let cfg = write_file(
        &dir,
        "run.json",
        &format!(
            r#"{{"source_weight": {{"family": "log_power", "p": 1.1}},
                "symbol": {{"coeffs": [[0,0],[1,0]]}},
                "output_dir": "{}"}}"#,
            dir.join("out").display()
        ),
    );
    let out = bin()
        .args(["classify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("hypothesis"));
    assert!(!dir.join("out").exists());
}

#[test]
fn degree_table_agrees_and_is_deterministic() {
    let dir = scratch("table");
    let mut runs = Vec::new();
    for run in 0..2 {
        let out_dir = dir.join(format!("run{run}"));
        let out = bin()
            .args(["degree-table", "--alpha", "1", "--p-list", "1,2,3", "--max-deg", "5", "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        assert!(stdout_of(&out).contains("0 disagreements"));
        runs.push(fs::read(out_dir.join("degree_table.csv")).unwrap());
    }
    assert_eq!(runs[0], runs[1], "degree_table.csv drifted");

    let text = String::from_utf8(runs[0].clone()).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,p,degree,rule,sampled,agree"));
    for line in lines {
        assert!(line.ends_with(",true"), "disagreeing row: {line}");
    }

    // growth orders below one have no complete closed-form rule
    let out = bin()
        .args(["degree-table", "--p-list", "0.5", "--out"])
        .arg(dir.join("bad"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lp_check_is_seeded_and_reproducible() {
    let dir = scratch("lp");
    let mut runs = Vec::new();
    for run in 0..2 {
        let out_dir = dir.join(format!("run{run}"));
        let out = bin()
            .args(["lp-check", "--seed", "42", "--count", "25", "--out"])
            .arg(&out_dir)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
        assert!(stdout_of(&out).contains("envelope C = "));
        runs.push(fs::read(out_dir.join("lp_check.csv")).unwrap());
    }
    assert_eq!(runs[0], runs[1], "same seed must give identical bytes");

    let text = String::from_utf8(runs[0].clone()).unwrap();
    assert!(text.starts_with("label,degree,deriv_over_value,value_over_seminorm\n"));
    assert!(text.lines().last().unwrap().starts_with("envelope,,"));
    assert_eq!(text.lines().count(), 27, "25 rows, header, envelope");

    // a different seed must change the drawn family
    let out_dir = dir.join("other_seed");
    let out = bin()
        .args(["lp-check", "--seed", "7", "--count", "25", "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_ne!(runs[0], fs::read(out_dir.join("lp_check.csv")).unwrap());
}

#[test]
fn lp_check_reads_the_run_config() {
    let dir = scratch("lp_cfg");
    let out_dir = dir.join("out");
    let cfg = write_file(
        &dir,
        "run.json",
        &format!(
            r#"{{"source_weight": {{"family": "exp_power", "alpha": 1, "p": 2}},
                "seed": 42,
                "output_dir": "{}"}}"#,
            out_dir.display()
        ),
    );
    let out = bin()
        .args(["lp-check", "--count", "25", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    // flag-driven run with the same seed and space produces the same bytes
    let flag_dir = dir.join("flags");
    bin()
        .args(["lp-check", "--seed", "42", "--count", "25", "--out"])
        .arg(&flag_dir)
        .output()
        .unwrap();
    assert_eq!(
        fs::read(out_dir.join("lp_check.csv")).unwrap(),
        fs::read(flag_dir.join("lp_check.csv")).unwrap()
    );
}

#[test]
fn no_temp_files_survive_a_successful_run() {
    let dir = scratch("tmpfiles");
    let out_dir = dir.join("out");
    let cfg = write_file(&dir, "run.json", &classify_config(&out_dir, "[[0,0],[1,0]]"));
    let out = bin()
        .args(["classify", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    for entry in fs::read_dir(&out_dir).unwrap() {
        let name = entry.unwrap().file_name();
        let name = name.to_string_lossy();
        assert!(!name.ends_with(".tmp"), "leftover temp file {name}");
    }
}
