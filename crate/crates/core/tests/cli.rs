use std::process::{Command, Output};

use convfib::convolved::conv_fib_int;
use convfib::exact::text::{parse_integer, series_from_json, series_to_json};
use convfib::fibonacci::fib;
use serde_json::Value;

fn convfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convfib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = convfib(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn fib_csv_golden() {
    let text = stdout(&["fib", "--from", "0", "--to", "11", "--format", "csv"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,F");
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[1], "0,1");
    assert_eq!(lines[12], "11,144");
}

#[test]
fn fib_single_and_negative() {
    assert_eq!(stdout(&["fib", "--from", "0", "--to", "0"]), "n,F\n0,1\n");
    let text = stdout(&["fib", "--from", "-3", "--to", "1"]);
    assert_eq!(text, "n,F\n-3,-1\n-2,1\n-1,0\n0,1\n1,1\n");
}

#[test]
fn fib_json_is_exact_for_large_indices() {
    let text = stdout(&["fib", "--from", "300", "--to", "300", "--format", "json"]);
    let rows: Value = serde_json::from_str(&text).unwrap();
    let f = rows[0]["F"].as_str().unwrap();
    assert_eq!(parse_integer(f).unwrap(), fib(300));
    assert!(f.len() > 60);
}

#[test]
fn triangle_table() {
    let text = stdout(&["table", "--mode", "triangle", "--n-max", "6"]);
    assert!(text.starts_with("N,i,a\n0,0,1\n"));
    for line in [
        "2,1,2", "3,1,6", "4,2,12", "5,2,60", "6,3,120", "1,1,0", "3,2,0", "5,3,0",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line}");
    }
}

#[test]
fn poly_table_json() {
    let text = stdout(&["table", "--mode", "poly", "--n", "2", "--format", "json"]);
    let poly: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(poly["N"], 2);
    assert_eq!(poly["rising"], serde_json::json!(["1", "2"]));
    assert_eq!(poly["monomial"], serde_json::json!(["0", "3", "1"]));
}

#[test]
fn values_table_matches_library() {
    let text = stdout(&[
        "table", "--mode", "values", "--r", "1", "--r-to", "3", "--n-max", "5",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,n,p"));
    let mut count = 0;
    for line in lines {
        let parts: Vec<&str> = line.split(',').collect();
        let r: i64 = parts[0].parse().unwrap();
        let n: usize = parts[1].parse().unwrap();
        assert_eq!(
            parse_integer(parts[2]).unwrap(),
            conv_fib_int(n, r),
            "{line}"
        );
        count += 1;
    }
    assert_eq!(count, 18);
    assert!(text.contains("1,3,18\n"));
}

#[test]
fn verify_exit_codes() {
    let out = convfib(&["verify", "thm6", "--N-max", "6", "--order", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["status"], "pass");
    assert_eq!(report["identity"], "thm6");

    assert_eq!(convfib(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(
        convfib(&["verify", "thm6", "--N-max", "12", "--order", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(convfib(&["fib", "--from", "x"]).status.code(), Some(2));
    assert_eq!(
        convfib(&["fib", "--from", "3", "--to", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_all_small_grid_csv() {
    let text = stdout(&[
        "verify", "all", "--N-max", "4", "--n-max", "5", "--r-max", "2", "--k-max", "3", "--order",
        "10", "--format", "csv",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "identity,cells,status,counterexample");
    assert_eq!(lines.len(), 12);
    assert!(lines[1..].iter().all(|l| l.contains(",pass,")), "{text}");
}

#[test]
fn bench_empty_grid() {
    let text = stdout(&["bench", "--n", "--r", "--triangle-n"]);
    assert_eq!(text, "algorithm,n,r,nanos\n");
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir().join(format!("convfib-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("triangle.csv");
    let path_str = path.to_str().unwrap();
    let args = [
        "table", "--mode", "triangle", "--n-max", "20", "--out", path_str,
    ];
    assert_eq!(stdout(&args), "");
    let first = std::fs::read(&path).unwrap();
    stdout(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();

    let single = stdout(&["verify", "cor8", "--N-max", "10", "--jobs", "1"]);
    let many = stdout(&["verify", "cor8", "--N-max", "10", "--jobs", "4"]);
    assert_eq!(single, many);
}

#[test]
fn series_text_round_trip() {
    let text = stdout(&["table", "--mode", "values", "--r", "-2", "--n-max", "30"]);
    let values: Vec<String> = text
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_owned())
        .collect();
    let json = Value::from(values.clone());
    let series = series_from_json(&json).unwrap();
    assert_eq!(series_to_json(&series), json);
}
