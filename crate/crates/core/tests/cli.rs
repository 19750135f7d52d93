use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blocklomuto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_prints_and_writes_the_table() {
    let o = run(&["analyze"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 37);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    assert!(run(&["analyze", "--out", path.to_str().unwrap()]).status.success());
    let csv = std::fs::read_to_string(path).unwrap();
    assert!(csv.lines().any(|l| l.contains("L2") && l.contains("1.88")), "{csv}");
}

#[test]
fn best_t_reports_the_optimum() {
    let o = run(&["best-t", "--scheme", "L1", "--measure", "ma", "--sample", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("2.215") && text.contains("(4, 6)"), "{text}");
    assert!(!run(&["best-t", "--scheme", "Q9", "--measure", "ma", "--sample", "2"]).status.success());
}

#[test]
fn gen_writes_text_and_binary() {
    let o = run(&["gen", "--dist", "EightDup", "--n", "8", "--format", "txt"]);
    assert!(o.status.success());
    let values: Vec<u64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values, [4, 5, 4, 5, 4, 5, 4, 5]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("perm.bin");
    let args = ["gen", "--dist", "Permutation", "--n", "100", "--seed", "3", "--format", "bin", "--out"];
    let mut full: Vec<&str> = args.to_vec();
    full.push(path.to_str().unwrap());
    assert!(run(&full).status.success());
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(bytes.len(), 800);
    let mut decoded: Vec<u64> = bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    decoded.sort_unstable();
    assert_eq!(decoded, (1..=100).collect::<Vec<u64>>());
}

#[test]
fn verify_succeeds_on_small_grid() {
    let o = run(&["verify", "--n", "0,1,2,10,1000", "--trials", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn invalid_arguments_fail() {
    assert!(!run(&["verify", "--algo", "bogus", "--n", "10"]).status.success());
    assert!(!run(&["verify", "--algo", "L1", "--block-size", "0", "--n", "10"]).status.success());
    assert!(!run(&["bench", "--algo", "L1", "--strategy", "2 (direct)", "--n", "10", "--trials", "1"])
        .status
        .success());
}

#[test]
fn bench_writes_one_row_per_trial() {
    let o = run(&[
        "bench", "--algo", "L1,L2,std", "--dist", "Sorted", "--n", "2^10", "--trials", "4", "--counters",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert!(rows[0].starts_with("algorithm,strategy,distribution,n,trial"));
    assert_eq!(rows.len(), 1 + 3 * 4);
    assert!(text.lines().any(|l| l.starts_with("# seed")), "{text}");
    // std has no counters; its counter columns are empty.
    let std_row = rows.iter().find(|l| l.starts_with("std,")).unwrap();
    assert!(std_row.ends_with(",,"));
}
