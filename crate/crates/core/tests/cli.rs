use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_twocircles");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("TWOCIRCLES_OUT_DIR").output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_prints_counts_and_writes_catalogs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["enumerate", "--max-points", "10", "--out-dir", out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counts: 1 1 2 4 13\n"));
    let first = fs::read(dir.path().join("catalog-10.txt")).unwrap();

    // refuses to overwrite, then reproduces the same bytes with --force
    assert_eq!(run(&["enumerate", "--max-points", "10", "--out-dir", out]).status.code(), Some(1));
    let o = run(&["enumerate", "--max-points", "10", "--out-dir", out, "--force", "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(dir.path().join("catalog-10.txt")).unwrap(), first);

    let o = run(&["enumerate", "--max-points", "2", "--no-write"]);
    assert!(stdout(&o).ends_with("counts: 1\n"));
}

#[test]
fn out_dir_defaults_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(BIN)
        .args(["enumerate", "--max-points", "4"])
        .env("TWOCIRCLES_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("catalog-04.txt").exists());
}

#[test]
fn count_table_rows() {
    let o = run(&["count", "--max-points", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<usize>> = text
        .lines()
        .skip(1)
        .take(5)
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[3], [8, 4, 4, 0, 4]);
    assert_eq!(rows[4], [10, 13, 12, 1, 14]);
    assert!(text.ends_with("flows: 1 1 2 4 14\n"));
    assert!(stdout(&run(&["count", "--max-points", "6", "--no-swap"])).contains("flows: 1 1 2\n"));
}

#[test]
fn symmetry_marks_one_asymmetric_class() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    run(&["enumerate", "--out-dir", out]);
    let o = run(&["symmetry", dir.path().join("catalog-10.txt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("A ")).count(), 1);
    assert_eq!(text.lines().filter(|l| l.starts_with("S ")).count(), 12);
    assert!(text.contains("flows=14"));
}

#[test]
fn invariants_of_the_lens() {
    let o = run(&["invariants", "--code", "GP1 2 1 2 + -"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vectors: (2,2)/(2,2)"));
    let o = run(&["invariants", "--format", "kv", "--code", "GP1 2 1 2 + -"]);
    let text = stdout(&o);
    for line in ["code=GP1 2 1 2 + -", "points=2", "regions=4", "black_degrees=2,2", "white_degrees=2,2", "simple=true", "matrix=1,-1;-1,1", "end"] {
        assert!(text.lines().any(|l| l == line), "{line} missing from\n{text}");
    }
}

#[test]
fn malformed_lines_report_line_numbers() {
    let o = run_stdin(&["invariants"], "# header\nGP1 2 1 2 + -\nGP1 2 1 2 + +\nGP1 2 1\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("<stdin>:3:"), "{err}");
    assert!(err.contains("<stdin>:4:"), "{err}");
    // the valid line is still processed
    assert!(stdout(&o).contains("(2,2)/(2,2)"));
}

#[test]
fn render_writes_one_file_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("cat");
    let svg = dir.path().join("svg");
    run(&["enumerate", "--out-dir", cat.to_str().unwrap()]);
    let o = run(&["render", cat.to_str().unwrap(), "--out-dir", svg.to_str().unwrap(), "--size", "300"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut names: Vec<String> = fs::read_dir(&svg)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 21);
    assert!(names.contains(&"2-1-S.svg".to_string()));
    assert_eq!(names.iter().filter(|n| n.ends_with("-A.svg")).count(), 1);
    let o = run(&["render", "--code", "GP1 2 1 2 + -", "--outer-face", "9", "--out-dir", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_table_and_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["oracle", "--max-points", "6", "--catalog-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("   6        2          2           0      2"));
    let text = fs::read_to_string(dir.path().join("catalog-06.txt")).unwrap();
    assert!(text.starts_with("# twocircles "));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert_eq!(run(&["oracle", "--max-points", "10"]).status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["enumerate", "--max-points", "5"]).status.code(), Some(1));
    assert_eq!(run(&["enumerate", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["count", "--jobs", "0"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["symmetry", "/nonexistent/file"]).status.code(), Some(2));
}
