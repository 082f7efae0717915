use std::process::Command;

use negacode::dncode::CodeRecord;
use negacode::Budget;

fn negacode(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_negacode"))
        .args(args)
        .env_remove("NEGACODE_CAPACITY")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn factor_both_reports_agreement() {
    let (code, stdout, _) = negacode(&["factor", "--q", "3", "--n", "8", "--method", "both"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[..2], ["x^4+x^2+2", "x^4+2x^2+2"]);
    assert_eq!(lines[3], "agreement: true");
}

#[test]
fn census_records_round_trip() {
    for (q, n) in [("3", "2"), ("3", "4"), ("5", "3")] {
        let (code, stdout, _) = negacode(&["census", "--q", q, "--n", n, "--weights"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = stdout.lines().collect();
        let (records, summary) = lines.split_at(lines.len() - 1);
        for line in records {
            let rec: CodeRecord = serde_json::from_str(line).unwrap();
            rec.revalidate(Budget::default()).unwrap();
            assert_eq!(serde_json::to_string(&rec).unwrap(), *line);
        }
        let summary: serde_json::Value = serde_json::from_str(summary[0]).unwrap();
        assert_eq!(
            summary["count_enumerated"].as_u64(),
            Some(records.len() as u64)
        );
        assert_eq!(summary["count_formula"], summary["count_enumerated"]);
    }
}

#[test]
fn search_sorts_by_distance() {
    let (code, stdout, _) = negacode(&["search", "--q", "5", "--n", "3"]);
    assert_eq!(code, 0);
    let ds: Vec<u64> = stdout
        .lines()
        .filter(|l| l.contains("\"a\""))
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["d"]
                .as_u64()
                .unwrap()
        })
        .collect();
    assert_eq!(ds.len(), 12);
    assert!(ds.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn check_and_witness() {
    let (code, stdout, _) = negacode(&["check", "--q", "3", "--n", "2", "--a", "1,1"]);
    assert_eq!((code, stdout.as_str()), (0, "self_dual: true\nd: 3\n"));
    let (code, stdout, _) = negacode(&[
        "check",
        "--q",
        "5",
        "--n",
        "3",
        "--a",
        "2,0,0",
        "--dihedral",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("witness: found"));
    assert!(stdout.contains("permutation_group_order: 6"));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["factor", "--q", "3", "--n", "4"], 0),
        (&["factor", "--q", "9", "--n", "3"], 2),
        (&["factor", "--q", "5", "--n", "3", "--method", "closed"], 2),
        (
            &["check", "--q", "5", "--n", "2", "--a", "2,0", "--dihedral"],
            2,
        ),
        (&["census", "--q", "3", "--n", "20"], 3),
        (&["check", "--q", "3", "--n", "30", "--a", "1"], 1),
        (
            &["report", "--q", "3", "--n-list", "2", "--capacity", "5"],
            0,
        ),
        (&["factor", "--q", "2", "--n", "4"], 1),
        (&["factor", "--q", "15", "--n", "4"], 1),
        (&["factor", "--n", "4"], 1),
        (&["bound", "--q", "3", "--tol", "-1"], 1),
        (&["report", "--q", "3"], 1),
        (&["census", "--q", "3", "--n", "two"], 1),
        (&["--version"], 0),
    ];
    for (args, expected) in cases {
        let (code, _, stderr) = negacode(args);
        assert_eq!(code, *expected, "{args:?}: {stderr}");
    }
}

#[test]
fn capacity_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_negacode"))
        .args(["check", "--q", "3", "--n", "8", "--a", "1,0,0,0,0,0,0,0"])
        .env("NEGACODE_CAPACITY", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_formats() {
    let (code, csv, _) = negacode(&["report", "--q", "3", "--n-list", "2,4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "q,n,count_formula,count_enum,best_d,delta,H_q_delta"
    );
    assert_eq!(lines[1], "3,2,4,4,3,0.75,");
    let (_, json, _) = negacode(&["report", "--q", "3", "--n-list", "2,4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(rows[1]["count_enum"].as_u64(), Some(8));
    assert_eq!(rows[0]["H_q_delta"], serde_json::Value::Null);
}
