use std::process::{Command, Output};
use std::time::Instant;

fn mills(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mills"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = mills(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn coarse_verify_is_fast_and_exits_zero() {
    let start = Instant::now();
    let out = mills(&["verify", "--grid-points", "50"]);
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 9);
    assert!(text.contains("informational"));
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["bounds-table", "--x-min", "2", "--x-max", "1"][..],
        &["bounds-table", "--bounds", "nope"],
        &["inverse-table", "--alpha-min", "1e-20"],
        &[
            "conjecture-scan",
            "--alpha-min",
            "1e-3",
            "--alpha-max",
            "1e-3",
        ],
        &["bound", "thm3_lower", "1.0"],
        &["mills-ratio", "-1"],
        &["inverse-q", "0.7"],
        &["estimate", "low2", "0.5"],
        &["crossover", "thm3_upper", "1", "2"],
        &["verify", "--grid-points", "nan"],
    ] {
        let out = mills(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("error"),
            "{args:?}"
        );
    }
}

#[test]
fn forced_evaluation_outside_validity() {
    let value: f64 = stdout(&["bound", "thm3_lower", "1.0", "--force"])
        .trim()
        .parse()
        .unwrap();
    assert!((value - 0.6065306597126334 * 2.0 / 3.0).abs() < 1e-15);
}

#[test]
fn figure_presets() {
    let fig1 = stdout(&["figure", "1"]);
    let header = fig1.lines().next().unwrap();
    assert_eq!(
        header,
        "x,reference,gordon_lower,gordon_lower_valid,gordon_upper,gordon_upper_valid,\
         thm3_lower,thm3_lower_valid,thm3_upper,thm3_upper_valid"
    );
    assert_eq!(fig1.lines().count(), 1 + 30);
    let fig4 = stdout(&["figure", "4"]);
    assert_eq!(fig4.lines().count(), 1 + 81);
    assert!(fig4.starts_with("alpha,reference,est_low1,est_low2,est_upp,cert_lower,cert_upper\n"));

    let fig3 = stdout(&["figure", "3"]);
    let header: Vec<&str> = fig3.lines().next().unwrap().split(',').collect();
    let row = fig3.lines().find(|l| l.starts_with("2.0,")).unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    let col = |name: &str| {
        cells[header.iter().position(|h| *h == name).unwrap()]
            .parse::<f64>()
            .unwrap()
    };
    assert!(col("bs_lower") < col("thm3_lower") && col("thm3_lower") < 1.0);
    assert!(1.0 < col("bs_upper") && col("bs_upper") < col("thm3_upper"));
}

#[test]
fn json_output_and_file_target() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "bounds-table",
        "--x-min",
        "1",
        "--x-max",
        "2",
        "--step",
        "0.5",
        "--bounds",
        "thm3",
        "--format",
        "json",
    ]))
    .unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0][3], false);
    assert_eq!(rows[2][3], true);

    let path = std::env::temp_dir().join(format!("mills-cli-{}.csv", std::process::id()));
    let printed = stdout(&[
        "inverse-table",
        "--alpha-min",
        "1e-3",
        "--alpha-max",
        "1e-3",
    ]);
    stdout(&[
        "inverse-table",
        "--alpha-min",
        "1e-3",
        "--alpha-max",
        "1e-3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    std::fs::remove_file(path).unwrap();
    assert_eq!(printed.lines().count(), 2);
}

#[test]
fn conjecture_report_shape() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["conjecture-scan"])).unwrap();
    assert_eq!(v["grid"]["points"], 81);
    let results = v["results"].as_array().unwrap();
    let names: Vec<&str> = results
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["low1", "low2", "upp"]);
    for r in results {
        for key in ["holds_at", "violations", "empirical_range"] {
            assert!(r.get(key).is_some(), "{key} missing");
        }
    }
    assert_eq!(results[0]["violations"].as_array().unwrap().len(), 0);
    assert_eq!(results[1]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn scalar_commands() {
    assert_eq!(stdout(&["mills-ratio", "0"]).trim(), "1.2533141373155003");
    assert_eq!(stdout(&["inverse-q", "0.5"]).trim(), "0.0");
    assert_eq!(stdout(&["crossover-constant"]).trim(), "0.7861513777574233");
    let tail: Vec<f64> = stdout(&["tail", "40"])
        .trim()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert!((tail[1] + 803.689_503_480_549_1).abs() < 1e-9);
    let catalog: serde_json::Value = serde_json::from_str(&stdout(&["catalog"])).unwrap();
    assert_eq!(catalog.as_array().unwrap().len(), 8);
    let compare = stdout(&["compare", "2", "--bounds", "bs"]);
    assert!(compare.contains("bs_lower") && compare.contains("bs_upper"));
}
