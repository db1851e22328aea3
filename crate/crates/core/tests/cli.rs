use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_betting-cs"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn simulate_writes_records_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "simulate",
            "--dist",
            "bernoulli:0.5",
            "--T",
            "100",
            "--reps",
            "2",
            "--algos",
            "co96,cp",
        ])
        .args(["--seed", "1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let records = fs::read_to_string(dir.path().join("records.csv")).unwrap();
    let mut lines = records.lines();
    assert_eq!(lines.next(), Some("run,t,x,algo,lower,upper,covered"));
    assert_eq!(lines.count(), 2 * 2 * 100);

    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().collect();
    assert_eq!(
        rows[0],
        "algo,miscoverage,width_t1,width_t10,width_t100,width_t1000,width_t10000,width_t100000"
    );
    assert!(rows[1].starts_with("co96,"));
    assert!(rows[2].starts_with("clopper_pearson,"));
}

#[test]
fn track_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let input = "0.3\n0.5\n\n1\n";
    let a = run_with_stdin(&["track", "--algo", "co96"], input);
    let b = run_with_stdin(&["track", "--algo", "bernstein"], input);
    assert!(a.status.success() && b.status.success());
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert!((first[1].parse::<f64>().unwrap() - 0.0075).abs() < 2e-4);

    let (pa, pb) = (dir.path().join("co.csv"), dir.path().join("eb.csv"));
    fs::write(&pa, &a.stdout).unwrap();
    fs::write(&pb, &b.stdout).unwrap();
    let joined = bin()
        .arg("compare")
        .arg(&pa)
        .arg(format!("bern={}", pb.display()))
        .output()
        .unwrap();
    assert!(joined.status.success());
    let table = String::from_utf8(joined.stdout).unwrap();
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows[0], "t,co_lower,co_upper,bern_lower,bern_upper");
    assert_eq!(rows.len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
    assert_eq!(
        bin().arg("frobnicate").output().unwrap().status.code(),
        Some(1)
    );
    let bad_delta = run_with_stdin(&["track", "--delta", "1.5"], "0.5\n");
    assert_eq!(bad_delta.status.code(), Some(1));
    let bad_sample = run_with_stdin(&["track"], "0.5\n1.2\n");
    assert_eq!(bad_sample.status.code(), Some(1));
    let slow = bin()
        .args([
            "simulate",
            "--dist",
            "beta:1,1",
            "--T",
            "20000",
            "--algos",
            "co96",
            "--no-records",
        ])
        .output()
        .unwrap();
    assert_eq!(slow.status.code(), Some(1));
}
