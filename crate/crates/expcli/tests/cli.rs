use std::path::Path;
use std::process::{Command, Output};

fn groverian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groverian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Values of the single data row of a one-row CSV.
fn row(csv: &str) -> Vec<(String, String)> {
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# groverian-expcli"));
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    let values: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    header.into_iter().zip(values).collect()
}

fn field(row: &[(String, String)], name: &str) -> f64 {
    row.iter()
        .find(|(k, _)| k == name)
        .unwrap()
        .1
        .parse()
        .unwrap()
}

#[test]
fn measure_ghz8() {
    let r = row(&stdout(&groverian(&["measure", "--state", "ghz:8"])));
    assert!((field(&r, "groverian") - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
    assert_eq!(field(&r, "restarts"), 64.0);
}

#[test]
fn measure_w3() {
    let r = row(&stdout(&groverian(&[
        "measure", "--state", "w:3", "--seed", "4",
    ])));
    assert!((field(&r, "p_max") - 0.4444444).abs() < 1e-6);
    assert_eq!(field(&r, "seed"), 4.0);
}

#[test]
fn measure_writes_angles() {
    let dir = tempfile::tempdir().unwrap();
    let angles = dir.path().join("angles.txt");
    let out = dir.path().join("m.csv");
    let o = groverian(&[
        "measure",
        "--state",
        "genghz:4:0.3",
        "--angles-out",
        angles.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&angles).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        assert_eq!(line.split_whitespace().count(), 2);
    }
    let r = row(&std::fs::read_to_string(&out).unwrap());
    assert!((field(&r, "p_max") - 0.7).abs() < 1e-9);
}

#[test]
fn grover_eta12_success_peaks_at_end() {
    let csv = stdout(&groverian(&[
        "grover", "--state", "eta:12", "--marked", "0", "--steps", "50",
    ]));
    let p: Vec<f64> = csv
        .lines()
        .skip(2)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(p.len(), 51);
    let max = p.iter().copied().fold(0.0, f64::max);
    assert_eq!(p[50], max);
    assert!(p[50] > 0.99);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# measure run\nstate = w:3\nrestarts=5\n").unwrap();
    let csv = stdout(&groverian(&[
        "measure",
        "--state",
        "ghz:3",
        "--restarts",
        "9",
        "--config",
        cfg.to_str().unwrap(),
    ]));
    let r = row(&csv);
    assert_eq!(field(&r, "restarts"), 5.0);
    assert!((field(&r, "p_max") - 4.0 / 9.0).abs() < 1e-9);
}

#[test]
fn invalid_inputs_fail_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad_cfg = dir.path().join("bad.cfg");
    std::fs::write(&bad_cfg, "colour=blue\n").unwrap();
    let unwritable = Path::new("/nonexistent-dir/out.csv");
    let cases: Vec<Vec<&str>> = vec![
        vec!["measure", "--state", "bogus:3"],
        vec!["measure", "--state", "ghz"],
        vec!["measure"],
        vec!["measure", "--state", "balanced:3"],
        vec![
            "grover", "--state", "eta:3", "--marked", "9", "--steps", "2",
        ],
        vec![
            "grover", "--state", "eta:3", "--marked", "0-7", "--steps", "2",
        ],
        vec!["fig1", "--grid", "0"],
        vec![
            "measure",
            "--state",
            "ghz:3",
            "--config",
            bad_cfg.to_str().unwrap(),
        ],
        vec![
            "measure",
            "--state",
            "ghz:3",
            "--out",
            unwritable.to_str().unwrap(),
        ],
        vec!["measure", "--state", "ghz:3", "--tol", "-1"],
    ];
    for args in cases {
        let out = groverian(&args);
        assert!(!out.status.success(), "{args:?} should fail");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(!stderr.trim().is_empty(), "{args:?} printed no diagnostic");
    }
}

#[test]
fn sparse_marking_warning() {
    let out = groverian(&[
        "grover", "--state", "eta:2", "--marked", "0,1", "--steps", "1",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
