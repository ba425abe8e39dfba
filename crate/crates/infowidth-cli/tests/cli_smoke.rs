//! End-to-end checks of the compiled binary: argument handling, exit
//! codes, output formats, and seeded reproducibility.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infowidth"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("process should exit normally")
}

fn json(output: &Output) -> Value {
    serde_json::from_str(&stdout(output)).expect("stdout should be JSON")
}

fn field(value: &Value, key: &str) -> f64 {
    value
        .get(key)
        .and_then(Value::as_f64)
        .unwrap_or_else(|| panic!("missing numeric field {key:?} in {value}"))
}

const WIDTH_GOLDEN: &str = "l,r,istar,kappastar\n1.678071905,2,1.800000000,0.932262170\n";

#[test]
fn width_row_prints_fixed_precision_csv() {
    let out = run(&["width", "--ny", "4", "--members", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), WIDTH_GOLDEN);
}

#[test]
fn width_out_file_matches_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("row.csv");
    let out = run(&[
        "width",
        "--ny",
        "4",
        "--members",
        "5",
        "--out",
        path.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "");
    assert_eq!(
        fs::read_to_string(&path).expect("written file"),
        WIDTH_GOLDEN
    );
}

#[test]
fn width_backends_agree_on_non_integral_count() {
    let exact = run(&[
        "width",
        "--ny",
        "128",
        "--members",
        "1000",
        "--backend",
        "exact",
    ]);
    let log = run(&[
        "width",
        "--ny",
        "128",
        "--members",
        "1000",
        "--backend",
        "logdomain",
    ]);
    assert_eq!(code(&exact), 0);
    assert_eq!(code(&log), 0);
    // Nine printed decimals comfortably absorb the documented backend gap.
    assert_eq!(stdout(&exact), stdout(&log));
}

#[test]
fn property_exact_report_is_json() {
    let out = run(&["property", "--n", "2", "--prop", "vd", "--d", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report = json(&out);
    assert_eq!(field(&report, "I"), 2.0);
    assert_eq!(field(&report, "H"), 0.0);
    assert_eq!(field(&report, "l"), 2.0);
    assert_eq!(field(&report, "kappa"), 1.0);
    assert_eq!(field(&report, "eta"), 1.0);
}

#[test]
fn property_mc_run_is_seeded_and_thread_invariant() {
    let base = [
        "property", "--n", "3", "--prop", "vd", "--d", "2", "--method", "mc", "--trials", "400",
        "--seed", "9",
    ];
    let one: Vec<&str> = base.iter().copied().chain(["--threads", "1"]).collect();
    let two: Vec<&str> = base.iter().copied().chain(["--threads", "2"]).collect();
    let a = run(&one);
    let b = run(&two);
    assert_eq!(code(&a), 0, "stderr: {}", stderr(&a));
    assert_eq!(
        stdout(&a),
        stdout(&b),
        "thread count changed a seeded result"
    );
    let report = json(&a);
    assert_eq!(field(&report, "trials"), 400.0);
    assert_eq!(field(&report, "seed"), 9.0);
    let errors = report.get("stderr").expect("stderr block");
    for key in ["I", "H", "l"] {
        assert!(field(errors, key) >= 0.0);
    }
}

#[test]
fn asymptotic_premise_note_goes_to_stderr() {
    let out = run(&[
        "property", "--n", "20", "--prop", "vdc", "--d", "4", "--method", "asym",
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        stderr(&out).contains("closed form assumes"),
        "expected an advisory note, got: {}",
        stderr(&out)
    );
    let report = json(&out);
    assert!((field(&report, "I") - 1.0).abs() < 0.1);
}

#[test]
fn measure_reports_target_and_whole_space_routes() {
    let dir = tempfile::tempdir().expect("tempdir");
    let prop = dir.path().join("prop.json");
    let target = dir.path().join("target.json");
    fs::write(&prop, r#"{"ny":4,"subsets":[[0,1],[2,3]]}"#).expect("write property");
    fs::write(&target, "[0]").expect("write target");

    let whole = run(&["measure", "--input", prop.to_str().expect("utf-8 path")]);
    assert_eq!(code(&whole), 0, "stderr: {}", stderr(&whole));
    let report = json(&whole);
    assert_eq!(field(&report, "I"), 1.0);
    assert_eq!(field(&report, "H"), 1.0);
    assert_eq!(field(&report, "l"), 3.0);
    assert_eq!(field(&report, "kappa"), 3.0);
    assert_eq!(field(&report, "eta"), 0.5);

    let targeted = run(&[
        "measure",
        "--input",
        prop.to_str().expect("utf-8 path"),
        "--target",
        target.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&targeted), 0, "stderr: {}", stderr(&targeted));
    let report = json(&targeted);
    assert_eq!(field(&report, "I"), 1.584_962_500_721_156);
    assert_eq!(field(&report, "H"), 1.0);
    assert_eq!(field(&report, "l"), 3.0);
    assert_eq!(field(&report, "kappa"), 1.892_789_260_714_372_4);
    // Efficiency compares against the whole-space width, so the targeted
    // route leaves it out.
    assert!(report.get("eta").is_none(), "unexpected eta in {report}");
}

#[test]
fn usage_errors_exit_two() {
    let neither = run(&["width", "--ny", "4"]);
    assert_eq!(code(&neither), 2);
    let both = run(&["width", "--ny", "4", "--l", "1", "--members", "5"]);
    assert_eq!(code(&both), 2);
    let missing_d = run(&["property", "--n", "2", "--prop", "vd"]);
    assert_eq!(code(&missing_d), 2);
    // The weighted-decay family is not a predicate, so it has no exact
    // enumeration route.
    let not_predicate = run(&[
        "property", "--n", "3", "--prop", "expdecay", "--alpha", "0.5", "--method", "exact",
    ]);
    assert_eq!(code(&not_predicate), 2);
    assert!(stderr(&not_predicate).starts_with("error:"));
}

#[test]
fn infeasible_requests_exit_three() {
    // Exhaustive enumeration over 2^(2^30) collections is out of range.
    let huge_domain = run(&["property", "--n", "30", "--prop", "vd", "--d", "4"]);
    assert_eq!(code(&huge_domain), 3);
    assert!(stderr(&huge_domain).starts_with("error:"));
    // The exact width backend is capped by space size.
    let huge_space = run(&[
        "width",
        "--ny",
        "2000",
        "--members",
        "3",
        "--backend",
        "exact",
    ]);
    assert_eq!(code(&huge_space), 3);
}

#[test]
fn missing_input_file_exits_one() {
    let dir = tempfile::tempdir().expect("tempdir");
    let gone = dir.path().join("absent.json");
    let out = run(&["measure", "--input", gone.to_str().expect("utf-8 path")]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn figure_emits_csv_and_svg() {
    let dir = tempfile::tempdir().expect("tempdir");
    let csv = dir.path().join("fig.csv");
    let svg = dir.path().join("fig.svg");
    let out = run(&[
        "figure",
        "--id",
        "2b",
        "--out-csv",
        csv.to_str().expect("utf-8 path"),
        "--out-svg",
        svg.to_str().expect("utf-8 path"),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));

    let table = fs::read_to_string(&csv).expect("csv written");
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("n,eta_gsqrt,eta_gn,eta_gexp"));
    // Spot value: at n = 16 the three efficiencies are 7/8, 3/4, 1/4.
    assert!(
        table.contains("\n16.000000000,0.875000000,0.750000000,0.250000000\n"),
        "missing reference row in: {}",
        &table[..table.len().min(400)]
    );

    let chart = fs::read_to_string(&svg).expect("svg written");
    assert!(
        chart.starts_with("<svg"),
        "not an svg: {}",
        &chart[..chart.len().min(80)]
    );
    assert!(chart.trim_end().ends_with("</svg>"));
    assert!(chart.contains("<polyline"));
}

#[test]
fn figure_csv_cells_reprint_their_parsed_values() {
    let out = run(&["figure", "--id", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().expect("header line");
    let columns = header.split(',').count();
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), columns, "ragged row: {line}");
        for cell in cells {
            let value: f64 = cell.parse().expect("numeric cell");
            // Nine fixed decimals round-trip through parse + reformat.
            assert_eq!(format!("{value:.9}"), cell);
        }
    }
}

#[test]
fn mc_validate_reports_all_checks() {
    let out = run(&["mc-validate", "--trials", "2000", "--seed", "0"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("11/11 checks passed (trials = 2000, seed = 0)"),
        "unexpected report: {text}"
    );
    assert_eq!(text.matches("ok  ").count(), 11);
}

/// The help screen names every subcommand; `Path::new` keeps the binary
/// path assertion platform-neutral.
#[test]
fn help_lists_all_subcommands() {
    assert!(Path::new(env!("CARGO_BIN_EXE_infowidth")).exists());
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["width", "property", "measure", "figure", "mc-validate"] {
        assert!(text.contains(name), "help is missing {name}: {text}");
    }
}
