use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn recon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recon")).args(args).output().expect("run recon")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn list_names_every_check() {
    let o = recon(&["list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for id in ["connection", "classify", "codes_N2", "period_density", "reconstruct"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn passing_verify_exits_zero_with_schema_line() {
    let o = recon(&["verify", "connection", "--q", "2", "--n-max", "5", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(r#"{"schema":"recon-verdict v1"}"#));
    let rec = lines.next().unwrap();
    assert!(rec.contains(r#""theorem":"connection""#) && rec.contains(r#""violations":0"#), "{rec}");
}

#[test]
fn violation_exits_one() {
    let o = recon(&["verify", "del_int_run", "--q", "2", "--n-max", "3", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL del_int_run"));
}

#[test]
fn usage_and_budget_errors_exit_two() {
    assert_eq!(recon(&["verify", "no_such_check"]).status.code(), Some(2));
    assert_eq!(recon(&["frobnicate"]).status.code(), Some(2));
    let o = recon(&["verify", "del_run", "--q", "2", "--n-max", "6", "--budget", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(recon(&["rho", "--n", "13", "--q", "2", "--N", "1", "--t", "1"]).status.code(), Some(2));
}

#[test]
fn csv_verdicts_go_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("v.csv");
    let o = recon(&[
        "verify",
        "char",
        "x_eq_y",
        "--q",
        "2",
        "--n-max",
        "4",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# recon-verdict v1");
    assert!(lines[1].starts_with("theorem,mode,checked"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn counts_table_row() {
    let o = recon(&["table", "counts", "--q", "2", "--n-min", "5", "--n-max", "5", "--t", "2", "--format", "csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.starts_with("2,5,2,29,29,")));
}

#[test]
fn enumerate_then_coverage() {
    let o = recon(&["code", "enumerate", "RunBounded", "--n", "5", "--q", "2", "--best"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("q=2"));
    // At most 3 runs in length 5: 2 * (1 + 4 + 6) words.
    assert_eq!(text.lines().count() - 1, 22);

    let o = recon(&["code", "coverage", "N7", "--n", "6", "--q", "2", "--best", "--t", "1,2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("size=6"), "{text}");
    let line = text.lines().find(|l| l.starts_with("t=2 ")).unwrap();
    assert!(line.contains("nu_ins=6"), "{line}");
}

#[test]
fn params_file_must_match_family() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"family":"N3","n":4,"q":2,"period":null,"clamped":false,"constraints":[]}"#;
    let p = write(dir.path(), "spec.json", spec);
    let o = recon(&["code", "enumerate", "N7", "--params", &p]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rho_small_case() {
    let o = recon(&["rho", "--n", "4", "--q", "2", "--N", "1", "--t", "1", "--kind", "deletion"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("max_size=4 "), "{text}");
    assert_eq!(text.lines().count(), 1 + 1 + 4);
}

#[test]
fn reconstruct_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let code = write(dir.path(), "code.txt", "q=2\n0000\n1111\n");
    let reads = write(dir.path(), "reads.txt", "# two reads\nq=2\n000100\n100000\n");
    let o = recon(&["reconstruct", "--code-file", &code, "--reads-file", &reads, "--t", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "unique\nq=2\n0000\n");

    let reads = write(dir.path(), "mixed.txt", "q=2\n000000\n111111\n");
    let o = recon(&["reconstruct", "--code-file", &code, "--reads-file", &reads, "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inconsistent"));

    let code = write(dir.path(), "pair.txt", "q=2\n01\n10\n");
    let reads = write(dir.path(), "one.txt", "q=2\n010\n");
    let o = recon(&["reconstruct", "--code-file", &code, "--reads-file", &reads, "--t", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ambiguous 2\nq=2\n01\n10\n");
}
