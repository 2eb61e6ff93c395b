use std::path::PathBuf;
use std::process::{Command, Output};

fn hatgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hatgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = hatgame(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

// decimal commas between digits become points
fn normalise_locale(text: &str) -> String {
    let chars: Vec<char> = text.chars().collect();
    chars
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let digit_at = |j: Option<usize>| {
                j.and_then(|j| chars.get(j))
                    .is_some_and(char::is_ascii_digit)
            };
            if *c == ',' && digit_at(i.checked_sub(1)) && digit_at(Some(i + 1)) {
                '.'
            } else {
                *c
            }
        })
        .collect()
}

#[test]
fn sorted_enumeration_matches_reference_table() {
    let out = stdout(&[
        "enumerate",
        "--n",
        "4",
        "--das",
        "4",
        "--p",
        "0.9",
        "--sort",
        "sum",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("N=4, das=4, p=0.9, nas=40, nasopt=24"));
    assert_eq!(lines.next(), Some(""));
    let table: Vec<&str> = lines.collect();
    let expected = normalise_locale(&fixture("n4_das4_p09_by_sum.tsv"));
    assert_eq!(table, expected.lines().collect::<Vec<_>>());
}

#[test]
fn enumeration_small_cases() {
    let out = stdout(&[
        "enumerate",
        "--n",
        "3",
        "--das",
        "2",
        "--p",
        "0.9",
        "--format",
        "csv",
    ]);
    let sums: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(
        out.lines().next(),
        Some("i1,i2,sum,sum_exact,zeros_i1,zeros_i2")
    );
    assert_eq!(sums, ["0.73", "0.09", "0.09", "0.09"]);

    let empty = stdout(&["enumerate", "--n", "3", "--das", "1", "--format", "csv"]);
    assert_eq!(empty, "i1,sum,sum_exact,zeros_i1\n");
    let text = stdout(&["enumerate", "--n", "3", "--das", "1"]);
    assert!(text.starts_with("N=3, das=1, p=0.5, nas=0, nasopt=0\n"));
}

#[test]
fn solved_matrix_round_trips_through_evaluate() {
    let json = stdout(&["solve", "--n", "5", "--p", "0.9", "--format", "json"]);
    let solved: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(solved["psi"], "0.91801");
    assert_eq!(solved["nasopt"], 30);
    assert_eq!(
        solved["sets"][0]["elements"],
        serde_json::json!([1, 6, 14, 22, 24, 27, 29])
    );

    let dir = std::env::temp_dir().join(format!("hatgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (k, set) in solved["sets"].as_array().unwrap().iter().enumerate() {
        let path = dir.join(format!("m{k}.json"));
        std::fs::write(&path, serde_json::to_string(&set["matrix"]).unwrap()).unwrap();
        let eval = stdout(&[
            "evaluate",
            "--p",
            "0.9",
            "--matrix",
            path.to_str().unwrap(),
            "--format",
            "json",
        ]);
        let eval: serde_json::Value = serde_json::from_str(&eval).unwrap();
        assert_eq!(eval["win_exact"], solved["psi_exact"]);
        assert_eq!(eval["free_invariant"], true);
    }

    // text form: the first matrix block of `solve`
    let text = stdout(&["solve", "--n", "3", "--p", "1/2"]);
    assert!(text.contains("psi 0.75 3/4\n"));
    let block: String = text
        .split("\n\n")
        .nth(1)
        .unwrap()
        .lines()
        .map(|l| format!("{l}\n"))
        .collect();
    let path = dir.join("m.txt");
    std::fs::write(&path, block).unwrap();
    let eval = stdout(&[
        "evaluate",
        "--n",
        "3",
        "--p",
        "1/2",
        "--matrix",
        path.to_str().unwrap(),
    ]);
    assert!(eval.starts_with("win 0.75 3/4\n"), "{eval}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_independent_of_worker_count() {
    for args in [
        &[
            "enumerate",
            "--n",
            "5",
            "--das",
            "7",
            "--p",
            "0.9",
            "--format",
            "csv",
        ][..],
        &["brute", "--n", "3", "--p", "9/10"][..],
        &["sweep", "--n", "4", "--das-range", "4..16", "--p", "0.9"][..],
        &["solve", "--n", "5", "--p", "11/20", "--format", "json"][..],
    ] {
        let one = stdout(&[args, &["--jobs", "1"]].concat());
        let many = stdout(&[args, &["--jobs", "4"]].concat());
        assert_eq!(one, many, "{args:?}");
        assert_eq!(stdout(args), one);
    }
}

#[test]
fn psi_curve_minimum() {
    let out = stdout(&[
        "psi", "--n", "5", "--pmin", "0.01", "--pmax", "0.99", "--steps", "98", "--format", "csv",
    ]);
    let mut rows = out.lines();
    assert_eq!(
        rows.next(),
        Some("p,psi,piece,breakpoint,p_exact,psi_exact")
    );
    let min = rows
        .map(|l| l.split(',').collect::<Vec<_>>())
        .min_by(|a, b| {
            a[1].parse::<f64>()
                .unwrap()
                .total_cmp(&b[1].parse::<f64>().unwrap())
        })
        .unwrap();
    assert_eq!((min[0], min[1], min[5]), ("0.5", "0.78125", "25/32"));
}

#[test]
fn brute_force_summary() {
    let out = stdout(&["brute", "--n", "2", "--p", "1/2"]);
    assert!(out.contains("30 optimal matrices, 17 non-isomorphic\n"));
    assert!(out.starts_with("max 0.5 1/2\n"));
}

#[test]
fn analysis_commands() {
    let dot = stdout(&["dominance", "--format", "dot"]);
    assert!(dot.starts_with("digraph dominance {"));
    let pair = stdout(&["dominance", "--pair", "022210", "024001"]);
    assert!(
        pair.starts_with("022210 crossing 024001\nroot 0.585786437627"),
        "{pair}"
    );
    let upper = stdout(&["dominance", "--from", "2-sqrt2", "--format", "json"]);
    let upper: serde_json::Value = serde_json::from_str(&upper).unwrap();
    assert_eq!(upper["minimal"], serde_json::json!(["022210"]));
    assert!(stdout(&["nasopt", "--n", "5", "--p", "2-sqrt2"]).contains("nasopt 40\n"));
    let table = stdout(&["complexity", "--format", "csv"]);
    assert!(table.contains("\n3,2,531441,729,28,531441,729,28\n"));
    assert!(table.contains(",3365856\n"));
    let covering = stdout(&["covering", "--n", "5"]);
    assert!(covering.contains("5\t7\t7\ttrue\t0.78125 25/32"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        hatgame(&["solve", "--n", "6", "--p", "0.9"]).status.code(),
        Some(3)
    );
    assert_eq!(
        hatgame(&[
            "sweep",
            "--n",
            "5",
            "--das-range",
            "12..12",
            "--mode",
            "exhaustive"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        hatgame(&["solve", "--n", "4", "--all-matrices"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        hatgame(&["enumerate", "--n", "1", "--das", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hatgame(&["enumerate", "--n", "3", "--das", "2", "--p", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hatgame(&["enumerate", "--n", "3", "--das", "2", "--p", "abc"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hatgame(&["enumerate", "--n", "3"]).status.code(), Some(2));
    assert_eq!(hatgame(&["brute", "--n", "4"]).status.code(), Some(2));
    assert_eq!(
        hatgame(&["psi", "--n", "5", "--format", "dot"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        hatgame(&["evaluate", "--matrix", "/nonexistent/matrix.txt"])
            .status
            .code(),
        Some(2)
    );
}
