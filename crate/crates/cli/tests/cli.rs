//! End-to-end tests of the binary: exit codes, report contents, and
//! output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn majdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn detect_entangled_werner_exits_3_with_report() {
    let out = majdet(&[
        "detect",
        "--detector",
        "t1",
        "--measurement",
        "bell",
        "--werner",
        "d=2,q=0.5",
    ]);
    assert_eq!(code(&out), 3);
    let text = stdout(&out);
    assert!(text.contains("verdict: Entangled"), "{text}");
    assert!(
        text.contains("violated at index 1, margin 0.125000000000"),
        "{text}"
    );
    assert!(text.contains("observed: [0.625000000000"), "{text}");
}

#[test]
fn detect_separable_werner_exits_0() {
    let out = majdet(&[
        "detect",
        "--detector",
        "t1",
        "--measurement",
        "bell",
        "--werner",
        "d=2,q=0.3",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: Inconclusive"));
}

#[test]
fn detect_t2_threshold_behavior() {
    let hot = majdet(&[
        "detect", "--detector", "t2", "--werner", "d=2,q=0.6",
    ]);
    assert_eq!(code(&hot), 3);
    let cold = majdet(&[
        "detect", "--detector", "t2", "--werner", "d=2,q=0.5",
    ]);
    assert_eq!(code(&cold), 0);
}

#[test]
fn detect_t3_on_product_state_file_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("product_state.json");
    // |01><01| on two qubits
    std::fs::write(
        &path,
        r#"{
  "dims": [2, 2],
  "matrix_re": [
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0]
  ],
  "matrix_im": [
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0]
  ]
}"#,
    )
    .unwrap();
    let out = majdet(&["detect", "--detector", "t3", "--state", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: Inconclusive"));
}

#[test]
fn state_file_matches_builtin_werner() {
    // werner d=2 q=0.5 written out longhand
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("werner.json");
    std::fs::write(
        &path,
        r#"{
  "dims": [2, 2],
  "matrix_re": [
    [0.375, 0.0, 0.0, 0.25],
    [0.0, 0.125, 0.0, 0.0],
    [0.0, 0.0, 0.125, 0.0],
    [0.25, 0.0, 0.0, 0.375]
  ],
  "matrix_im": [
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0]
  ]
}"#,
    )
    .unwrap();
    let from_file = majdet(&[
        "detect", "--detector", "t1", "--measurement", "bell", "--state",
        path.to_str().unwrap(),
    ]);
    let builtin = majdet(&[
        "detect", "--detector", "t1", "--measurement", "bell", "--werner", "d=2,q=0.5",
    ]);
    assert_eq!(code(&from_file), 3);
    // identical apart from the state description line
    let strip = |s: String| -> Vec<String> {
        s.lines()
            .filter(|l| !l.starts_with("state:"))
            .map(str::to_owned)
            .collect()
    };
    assert_eq!(strip(stdout(&from_file)), strip(stdout(&builtin)));
}

#[test]
fn scalar_detectors_follow_their_parents() {
    let max_order = majdet(&[
        "detect", "--detector", "c1:tsallis:inf", "--measurement", "bell", "--werner",
        "d=2,q=0.5",
    ]);
    assert_eq!(code(&max_order), 3);

    // entangled by majorization at q = 0.34 but below the Shannon threshold
    let shannon = majdet(&[
        "detect", "--detector", "c1:shannon", "--measurement", "bell", "--werner",
        "d=2,q=0.34",
    ]);
    assert_eq!(code(&shannon), 0);
    let parent = majdet(&[
        "detect", "--detector", "t1", "--measurement", "bell", "--werner", "d=2,q=0.34",
    ]);
    assert_eq!(code(&parent), 3);
}

#[test]
fn werner_scan_csv_format_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = majdet(&[
        "werner-scan",
        "--d",
        "2..8",
        "--orders",
        "1,2,5,inf",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(!csv.contains('\r'), "LF line endings required");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "d,order,q_star,method");
    assert_eq!(lines.len(), 1 + 7 * 4);
    for d in 2..=8usize {
        let expected = 1.0 / (1.0 + d as f64);
        let row = lines
            .iter()
            .find(|l| l.starts_with(&format!("{d},inf,")))
            .unwrap_or_else(|| panic!("missing inf row for d = {d}"));
        let q: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!((q - expected).abs() < 1e-12, "{row}");
        assert!(row.ends_with("analytic"), "{row}");
    }
    // per dimension the threshold drops as the order grows
    for d in 2..=8usize {
        let qs: Vec<f64> = lines[1..]
            .iter()
            .filter(|l| l.starts_with(&format!("{d},")))
            .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
            .collect();
        assert_eq!(qs.len(), 4);
        assert!(qs.windows(2).all(|w| w[0] > w[1]), "d = {d}: {qs:?}");
    }

    let again = majdet(&["werner-scan", "--d", "2..8", "--orders", "1,2,5,inf"]);
    assert_eq!(stdout(&again), csv, "scan must be byte-identical run to run");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = [
        "detect",
        "--detector",
        "t1",
        "--measurement",
        "eigenbasis",
        "--werner",
        "d=2,q=0.6",
        "--seed",
        "11",
        "--restarts",
        "8",
    ];
    let first = majdet(&args);
    let second = majdet(&args);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(code(&first), code(&second));
}

#[test]
fn bound_subcommand_reports_mu_and_bound() {
    let out = majdet(&[
        "bound",
        "--measurement",
        "pauli3",
        "--restarts",
        "16",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mu: [0.4905"), "{text}");
    assert!(text.contains("bound: [0.4905"), "{text}");
    assert!(text.contains("converged:"), "{text}");

    let sep = majdet(&[
        "bound",
        "--measurement",
        "bell",
        "--dims",
        "2,2",
        "--separable",
        "--restarts",
        "8",
    ]);
    assert_eq!(code(&sep), 0);
    assert!(stdout(&sep).contains("bound: [0.500000000000, 0.500000000000, 0, 0]"));
}

#[test]
fn spectrum_estimate_matches_known_spectrum() {
    let out = majdet(&["spectrum-estimate", "--werner", "d=2,q=0.5", "--restarts", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("estimated spectrum: [0.625000000"), "{text}");
}

#[test]
fn exit_codes_for_bad_input() {
    // unknown flag: usage error
    let out = majdet(&["detect", "--bogus"]);
    assert_eq!(code(&out), 1);

    // missing state source
    let out = majdet(&["detect", "--detector", "t1", "--measurement", "bell"]);
    assert_eq!(code(&out), 1);

    // malformed state file
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = majdet(&[
        "detect", "--detector", "t3", "--state", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    // invariant-violating state (trace 2)
    std::fs::write(
        &path,
        r#"{"dims": [2], "matrix_re": [[1.0, 0.0], [0.0, 1.0]], "matrix_im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    )
    .unwrap();
    let out = majdet(&[
        "detect", "--detector", "t3", "--state", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);

    // t2 on a non-two-qubit state
    let out = majdet(&["detect", "--detector", "t2", "--werner", "d=3,q=0.5"]);
    assert_eq!(code(&out), 1);

    // unsound corollary combination is refused
    let out = majdet(&[
        "detect", "--detector", "c2:tsallis:0.5", "--werner", "d=2,q=0.5",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn povm_file_measurement_works() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("computational.json");
    std::fs::write(
        &path,
        r#"{
  "label": "computational",
  "elements": [
    { "re": [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
      "im": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]] },
    { "re": [[0.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
      "im": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]] },
    { "re": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 0.0]],
      "im": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]] },
    { "re": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0]],
      "im": [[0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0]] }
  ]
}"#,
    )
    .unwrap();
    // a product-basis measurement can never flag entanglement
    let out = majdet(&[
        "detect",
        "--detector",
        "t1",
        "--measurement",
        "file",
        "--povm",
        path.to_str().unwrap(),
        "--werner",
        "d=2,q=0.9",
        "--restarts",
        "8",
        "--seed",
        "1",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn out_flag_writes_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = majdet(&[
        "detect",
        "--detector",
        "t1",
        "--measurement",
        "bell",
        "--werner",
        "d=2,q=0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).is_empty());
    let report = std::fs::read_to_string(&path).unwrap();
    assert!(report.contains("verdict: Entangled"));
    assert!(Path::new(&path).exists());
}
