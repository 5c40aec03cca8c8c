use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["scan", "--help"]), 0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["lemma", "--n", "2", "--k-max", "0"][..],
        &["lemma", "--k-max", "3"],
        &[
            "scan", "--p", "4", "--q", "2", "--n-max", "3", "--d-max", "3",
        ],
        &[
            "scan", "--p", "1.5", "--q", "1.8", "--n-max", "3", "--d-max", "3",
        ],
        &[
            "scan", "--p", "2", "--q", "4", "--n-max", "3", "--d-max", "3", "--tol", "0.1",
        ],
        &[
            "scan", "--p", "2", "--q", "4", "--n-max", "3", "--d-max", "3", "--jobs", "0",
        ],
        &[
            "scan", "--p", "2", "--q", "4", "--n-min", "1", "--n-max", "3", "--d-max", "3",
        ],
        &["ratio", "--d", "2", "--p", "2", "--q", "4"],
        &["limit", "--d", "2", "--p", "2", "--q", "4", "--n", "100,10"],
        &["logsob", "--n", "2", "--coeffs", "0,1"],
        &["subordination", "--x", "-1"],
        &[
            "necessity",
            "--n",
            "3",
            "--p",
            "2",
            "--q",
            "4",
            "--eps",
            "0.6",
        ],
        &["frobnicate"],
    ] {
        assert_eq!(code(args), 64, "{args:?}");
    }
}

#[test]
fn lemma_expectations() {
    assert_eq!(code(&["lemma", "--n", "2,3", "--k-max", "1000"]), 0);
    let csv = stdout(&["lemma", "--n", "4", "--k-max", "3", "--format", "csv"]);
    let row = csv.lines().find(|l| l.starts_with("4,3,")).unwrap();
    assert!(row.contains(",fails,"), "{row}");
    let k1 = stdout(&["lemma", "--n", "2,3", "--k-max", "1", "--format", "csv"]);
    assert_eq!(k1.lines().filter(|l| l.contains(",holds,true,")).count(), 2);
}

#[test]
fn scan_reports_first_failure() {
    let out = run(&[
        "scan", "--p", "2", "--q", "4", "--n-max", "13", "--d-max", "10", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        csv.lines().next().unwrap(),
        "n,d,p,q,lhs_log,rhs_log,margin_log,num_error_log,status"
    );
    assert_eq!(csv.lines().count(), 1 + 12 * 10);
    let first_fail = csv.lines().find(|l| l.ends_with(",fails")).unwrap();
    assert!(first_fail.starts_with("13,7,"), "{first_fail}");
    let side = String::from_utf8(out.stderr).unwrap();
    assert!(side.contains("first_failure: n=13 d=7"));
    assert!(side.contains("n0_upper_bound"));
}

#[test]
fn scan_low_dimensions_clean() {
    let csv = stdout(&[
        "scan", "--p", "2", "--q", "4", "--n-max", "3", "--d-max", "30", "--format", "csv",
    ]);
    assert!(!csv.contains(",fails"));
    assert!(!csv.contains(",inconclusive"));
}

#[test]
fn reals_have_seventeen_digits() {
    let csv = stdout(&[
        "scan", "--p", "2", "--q", "4", "--n-max", "2", "--d-max", "1", "--format", "csv",
    ]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let mantissa = row[4].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17);
    assert_eq!(row[2], "2.0000000000000000e0");
}

#[test]
fn output_is_independent_of_jobs() {
    for format in ["csv", "json"] {
        let base = [
            "scan", "--p", "2", "--q", "4", "--n-max", "9", "--d-max", "8", "--format", format,
        ];
        let one = run(&[&base[..], &["--jobs", "1"]].concat());
        let many = run(&[&base[..], &["--jobs", "7"]].concat());
        assert_eq!(one.stdout, many.stdout, "{format}");
        assert_eq!(one.stderr, many.stderr, "{format}");
    }
    let suite = [
        "suite", "--trials", "40", "--seed", "11", "--format", "json",
    ];
    assert_eq!(
        run(&[&suite[..], &["--jobs", "1"]].concat()).stdout,
        run(&[&suite[..], &["--jobs", "5"]].concat()).stdout
    );
}

#[test]
fn seed_changes_suite() {
    let a = stdout(&["suite", "--trials", "10", "--seed", "1", "--format", "csv"]);
    let b = stdout(&["suite", "--trials", "10", "--seed", "2", "--format", "csv"]);
    assert_ne!(a, b);
}

#[test]
fn json_document_shape() {
    let text = stdout(&["subordination", "--x", "0,1,5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["metadata"]["tool"], "hypersphere");
    assert_eq!(v["metadata"]["command"], "subordination");
    assert!(v["metadata"].get("timestamp").is_none());
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row["status"], "holds");
        assert!(row["deviation"].as_f64().unwrap() < 1e-10);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = run(&[
        "scan",
        "--p",
        "2",
        "--q",
        "4",
        "--n-max",
        "3",
        "--d-max",
        "2",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 5);
}

#[test]
fn wrapper_commands() {
    assert_eq!(code(&["subordination", "--x", "0,1,5"]), 0);
    assert_eq!(
        code(&[
            "logsob",
            "--n",
            "2",
            "--coeffs",
            "1,0.1,0.05",
            "--rhs",
            "beckner"
        ]),
        0
    );
    assert_eq!(code(&["logsob", "--n", "3", "--coeffs", "2,-0.3,0.2"]), 0);
    assert_eq!(
        code(&[
            "limit",
            "--d",
            "2",
            "--p",
            "2",
            "--q",
            "4",
            "--n",
            "10,100,1000"
        ]),
        0
    );
    assert_eq!(
        code(&["ratio", "--n", "13", "--d", "7", "--p", "2", "--q", "4"]),
        0
    );
    assert_eq!(
        code(&["ratio", "--gaussian", "--d", "3", "--p", "2", "--q", "4"]),
        0
    );
    assert_eq!(code(&["necessity", "--n", "2", "--p", "2", "--q", "4"]), 0);
    let ratio = stdout(&[
        "ratio", "--n", "13", "--d", "7", "--p", "2", "--q", "4", "--format", "csv",
    ]);
    assert!(ratio.lines().nth(1).unwrap().ends_with(",fails"));
}

#[test]
fn expectation_flag_sets_exit_code() {
    let counter = ["ratio", "--n", "13", "--d", "7", "--p", "2", "--q", "4"];
    assert_eq!(code(&[&counter[..], &["--expect", "fails"]].concat()), 0);
    assert_eq!(code(&[&counter[..], &["--expect", "holds"]].concat()), 2);
    assert_eq!(code(&["subordination", "--x", "1", "--expect", "fails"]), 2);
    assert_eq!(
        code(&["lemma", "--n", "2", "--k-max", "3", "--expect", "holds"]),
        64
    );
}

#[test]
fn unresolved_tie_exits_3() {
    // At the critical time both sides agree to fourth order in eps, far
    // below the quadrature error for tiny eps.
    assert_eq!(
        code(&[
            "necessity",
            "--n",
            "2",
            "--p",
            "2",
            "--q",
            "4",
            "--eps",
            "1e-9"
        ]),
        3
    );
}

#[test]
fn repro_passes() {
    let out = run(&["repro", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains(",fail,"));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("11/11 checks passed"));
}
