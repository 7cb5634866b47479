use std::path::Path;
use std::process::{Command, Output};

use sparse_rc::cli::{read_csv, SWEEP_HEADER};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sparse-rc"));
    c.env_remove("SPARSE_RC_WORKERS").env("RUST_LOG", "warn");
    c
}

const SMALL: [&str; 16] = [
    "--n", "10", "--chi-r", "1,5", "--chi-i", "1,2", "--realizations", "2", "--series-len", "400",
    "--washout", "50", "--train-len", "250", "--delays", "20",
];

fn sweep(dir: &Path, name: &str, extra: &[&str]) -> Output {
    let out = dir.join(name);
    bin()
        .arg("sweep")
        .args(SMALL)
        .args(["--seed", "7", "--out"])
        .arg(&out)
        .args(extra)
        .output()
        .unwrap()
}

#[test]
fn sweep_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = sweep(dir.path(), "run.csv", &["--emit-raw", "--emit-svg", "--workers", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    assert_eq!(text.lines().next(), Some(SWEEP_HEADER));
    let records = read_csv(&dir.path().join("run.csv")).unwrap();
    let cells: Vec<_> = records.iter().map(|r| (r.chi_r, r.chi_i)).collect();
    assert_eq!(cells, vec![(1, 1), (1, 2), (5, 1), (5, 2)]);
    assert!(records.iter().all(|r| r.n_ok == 2));
    let raw = std::fs::read_to_string(dir.path().join("run_raw.csv")).unwrap();
    assert_eq!(raw.lines().count(), 1 + 8);
    for f in ["run_summary.csv", "run_mc.svg", "run_neff.svg"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    assert!(sweep(dir.path(), "a.csv", &["--workers", "1"]).status.success());
    let env_run = bin()
        .env("SPARSE_RC_WORKERS", "3")
        .arg("sweep")
        .args(SMALL)
        .args(["--seed", "7", "--out"])
        .arg(dir.path().join("b.csv"))
        .output()
        .unwrap();
    assert!(env_run.status.success());
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn summarize_reproduces_sweep_summary() {
    let dir = tempfile::tempdir().unwrap();
    assert!(sweep(dir.path(), "s.csv", &[]).status.success());
    let out = dir.path().join("again.csv");
    let o = bin()
        .arg("summarize")
        .arg(dir.path().join("s.csv"))
        .arg("--out")
        .arg(&out)
        .arg("--emit-svg")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        std::fs::read(dir.path().join("s_summary.csv")).unwrap(),
        std::fs::read(&out).unwrap()
    );
    assert!(dir.path().join("s_mc.svg").exists());
}

#[test]
fn single_prints_metrics_and_per_delay_file() {
    let dir = tempfile::tempdir().unwrap();
    let per_delay = dir.path().join("pd.csv");
    let o = bin()
        .args(["single", "--n", "10", "--chi-r", "3", "--chi-i", "2", "--series-len", "400"])
        .args(["--washout", "50", "--train-len", "250", "--delays", "20", "--per-delay-out"])
        .arg(&per_delay)
        .output()
        .unwrap();
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    let mc: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("mc_total: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(stdout.lines().any(|l| l.starts_with("neff: ")));
    let rows = std::fs::read_to_string(&per_delay).unwrap();
    let sum: f64 = rows.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap()).sum();
    assert_eq!(rows.lines().count(), 21);
    assert!((sum - mc).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["sweep", "--nonsense"],
        vec!["sweep", "--chi-r", "101"],
        vec!["sweep", "--m", "3"],
        vec!["sweep", "--full", "--n", "50"],
        vec!["single", "--chi-i", "0"],
        vec!["frobnicate"],
    ] {
        let o = bin().args(&args).output().unwrap();
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bad_worker_env_is_usage_error() {
    let o = bin().env("SPARSE_RC_WORKERS", "many").args(["sweep", "--desk"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unreadable_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.csv");
    std::fs::write(&path, "not,a,sweep\n").unwrap();
    let o = bin().arg("summarize").arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = bin().arg("summarize").arg(dir.path().join("missing.csv")).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}
