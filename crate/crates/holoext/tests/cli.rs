//! Exit codes, diagnostics, and file handling of the `holoext` binary.

use std::path::{Path, PathBuf};
use std::process::Output;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_holoext")
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("holoext-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(bin()).args(args).output().unwrap()
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

const TWO_COMPONENT_PROBLEM: &str = r#"{
    "schema_version": 1,
    "domain": {
        "outer": {"center": {"re": 0.0, "im": 0.0}, "radius": 1.0},
        "holes": [{"center": {"re": 0.0, "im": 0.0}, "radius": 0.5}]
    },
    "constraints": [
        {"points": [{"angle": 0.0, "value": {"re": 0.3, "im": 0.0}}], "bound": {"const": 1.0}},
        {"points": [{"point": {"re": 0.5, "im": 0.0}, "value": {"re": -0.2, "im": 0.0}}], "bound": {"const": 1.0}}
    ]
}"#;

#[test]
fn solve_verify_round_trip() {
    let dir = scratch_dir("solve");
    let problem = dir.join("problem.json");
    write(&problem, TWO_COMPONENT_PROBLEM);
    let out = dir.join("result.json");
    let csv = dir.join("samples.csv");

    let output = run(&[
        "solve",
        problem.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--samples",
        "2048",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("margins"), "{stdout}");

    // report written next to the result
    let report = dir.join("result.report.json");
    let report_text = std::fs::read_to_string(&report).unwrap();
    let report_value: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    assert_eq!(report_value["mode"], "bounded");
    assert!(report_value["component_bound_margins"].is_array());
    assert!(report_value["wall_time_seconds"].is_number());

    // csv has the documented columns
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = csv_text.lines();
    assert_eq!(lines.next().unwrap(), "component,angle,re,im,abs,bound");
    assert_eq!(csv_text.lines().count(), 1 + 2 * 2048);

    // verify passes on a fresh result and prints one line per check
    let output = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    for check in ["interpolation", "boundary-bound", "holomorphy", "interior-max-modulus"] {
        assert!(stdout.contains(&format!("check {check}: PASS")), "{stdout}");
    }

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn solve_reports_infeasible_bounds() {
    let dir = scratch_dir("infeasible");
    let problem = dir.join("problem.json");
    write(
        &problem,
        &TWO_COMPONENT_PROBLEM.replace("\"re\": 0.3", "\"re\": 1.0"),
    );
    let output = run(&["solve", problem.to_str().unwrap(), "--out", dir.join("r.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("InfeasibleBound"), "{stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_files_exit_one() {
    let dir = scratch_dir("malformed");
    let problem = dir.join("problem.json");
    write(&problem, "{ not json");
    for subcommand in ["solve", "decompose", "map", "verify"] {
        let output = run(&[subcommand, problem.to_str().unwrap()]);
        assert_eq!(output.status.code(), Some(1), "{subcommand}");
    }
    let missing = dir.join("missing.json");
    let output = run(&["verify", missing.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_one() {
    let output = run(&["solve"]);
    assert_eq!(output.status.code(), Some(1));
    let output = run(&["frobnicate", "x.json"]);
    assert_eq!(output.status.code(), Some(1));
    let output = run(&["solve", "x.json", "--laplace"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn decompose_exit_codes_and_tables() {
    let dir = scratch_dir("decompose");

    // the analytic one-index measure: everything routes through lambda0
    let measure = dir.join("measure.json");
    write(
        &measure,
        r#"{
            "schema_version": 1,
            "r0": 0.5,
            "inner": {"density": {"1": {"re": -0.5, "im": 0.0}}},
            "outer": {"density": {"1": {"re": 1.0, "im": 0.0}}}
        }"#,
    );
    let out = dir.join("decomposition.json");
    let output = run(&[
        "decompose",
        measure.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--truncation",
        "8",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(value["truncation"], 8);
    // eta0 is the zero measure: no atoms, no density serialized
    assert!(value["eta0"].as_object().unwrap().is_empty());
    let rows = value["coefficients"].as_array().unwrap();
    assert_eq!(rows.len(), 17);

    // violating the cancellation hypothesis exits 2
    let bad = dir.join("bad.json");
    write(
        &bad,
        r#"{
            "schema_version": 1,
            "r0": 0.5,
            "inner": {"density": {"0": {"re": 1.0, "im": 0.0}}},
            "outer": {"density": {"0": {"re": 1.0, "im": 0.0}}}
        }"#,
    );
    let output = run(&["decompose", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("HypothesisViolated"));

    // the zero measure decomposes to all-zero tables
    let zero = dir.join("zero.json");
    write(
        &zero,
        r#"{"schema_version": 1, "r0": 0.5, "inner": {}, "outer": {}}"#,
    );
    let output = run(&["decompose", zero.to_str().unwrap(), "--out", out.to_str().unwrap(), "--truncation", "4"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for row in value["coefficients"].as_array().unwrap() {
        for field in ["lambda0", "eta0", "eta1", "lambda1"] {
            assert_eq!(row[field]["re"].as_f64().unwrap(), 0.0);
            assert_eq!(row[field]["im"].as_f64().unwrap(), 0.0);
        }
    }

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn map_prints_modulus_and_correspondence() {
    let dir = scratch_dir("map");
    let domain = dir.join("domain.json");
    write(
        &domain,
        r#"{
            "schema_version": 1,
            "outer": {"center": {"re": 0.0, "im": 0.0}, "radius": 1.0},
            "holes": [{"center": {"re": 0.3, "im": 0.0}, "radius": 0.3}]
        }"#,
    );
    let csv = dir.join("correspondence.csv");
    let output = run(&[
        "map",
        domain.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--samples",
        "128",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    // 1/3 printed with enough digits to read 12 of them
    assert!(stdout.contains("r0 = 3.333333333333"), "{stdout}");
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().next().unwrap(), "source_re,source_im,image_re,image_im");
    assert_eq!(csv_text.lines().count(), 1 + 2 * 128);

    // concentric circles: plain radius ratio
    write(
        &domain,
        r#"{
            "schema_version": 1,
            "outer": {"center": {"re": 5.0, "im": 0.0}, "radius": 2.0},
            "holes": [{"center": {"re": 5.0, "im": 0.0}, "radius": 1.0}]
        }"#,
    );
    let output = run(&["map", domain.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).contains("r0 = 5.0000000000000000e-1"));

    // non-nested circles exit 2 with the NotNested diagnostic
    write(
        &domain,
        r#"{
            "schema_version": 1,
            "outer": {"center": {"re": 0.0, "im": 0.0}, "radius": 1.0},
            "holes": [{"center": {"re": 0.9, "im": 0.0}, "radius": 0.3}]
        }"#,
    );
    let output = run(&["map", domain.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("NotNested"));

    // a problem file also works as map input; its domain is used
    let problem = dir.join("problem.json");
    write(&problem, TWO_COMPONENT_PROBLEM);
    let output = run(&["map", problem.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).contains("r0 = 5.0000000000000000e-1"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_catches_corrupted_results() {
    let dir = scratch_dir("corrupt");
    let problem = dir.join("problem.json");
    write(&problem, TWO_COMPONENT_PROBLEM);
    let out = dir.join("result.json");
    let output = run(&["solve", problem.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));

    // perturb the first scale factor in the stored expression tree
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    {
        let factor = value
            .pointer_mut("/function/expr/terms/0/factors/0/outer/terms/0/factor/re")
            .expect("stored tree has the glued shape");
        let original = factor.as_f64().unwrap();
        *factor = serde_json::json!(original + 0.05);
    }
    write(&out, &serde_json::to_string(&value).unwrap());

    let output = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&output.stdout);
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stdout.contains("check interpolation: FAIL"), "{stdout}");
    assert!(stderr.contains("interpolation"), "{stderr}");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn puncture_solve_reports_no_bound_fields() {
    let dir = scratch_dir("puncture");
    let problem = dir.join("problem.json");
    write(
        &problem,
        r#"{
            "schema_version": 1,
            "domain": {
                "outer": {"center": {"re": 0.0, "im": 0.0}, "radius": 1.0},
                "holes": [{"center": {"re": 0.5, "im": 0.0}, "radius": 0.2}],
                "punctures": [{"re": 0.0, "im": 0.0}]
            },
            "constraints": [
                {"points": [{"angle": 3.141592653589793, "value": {"re": 0.0, "im": 0.0}}], "bound": {"const": 1.0}},
                {"points": [{"point": {"re": 0.3, "im": 0.0}, "value": {"re": 0.0, "im": 0.0}}], "bound": {"const": 1.0}}
            ],
            "puncture_values": [{"re": 5.0, "im": 0.0}]
        }"#,
    );
    let out = dir.join("result.json");
    let output = run(&["solve", problem.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));

    let report_text = std::fs::read_to_string(dir.join("result.report.json")).unwrap();
    let report: serde_json::Value = serde_json::from_str(&report_text).unwrap();
    assert_eq!(report["mode"], "puncture");
    assert!(report.get("component_bound_margins").is_none());
    assert!(report.get("bound_chain_slack").is_none());
    assert!(report["puncture_residual"].is_number());

    let output = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{}", String::from_utf8_lossy(&output.stderr));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("check puncture-interpolation: PASS"), "{stdout}");

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn canonical_result_files_reparse_identically() {
    let dir = scratch_dir("canonical");
    let problem = dir.join("problem.json");
    write(&problem, TWO_COMPONENT_PROBLEM);
    let out = dir.join("result.json");
    let output = run(&["solve", problem.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));

    // serialize(parse(x)) is byte-identical for canonical files
    let text = std::fs::read_to_string(&out).unwrap();
    let parsed: holoext::io::ResultFile = holoext::io::from_json(&text).unwrap();
    let reserialized = holoext::io::to_canonical_json(&parsed).unwrap();
    assert_eq!(text, reserialized);

    std::fs::remove_dir_all(&dir).ok();
}
