use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn psw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psw"))
        .args(args)
        .env_remove("PSW_LLM_API_KEY")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn spec(label: &str) -> String {
    root().join(format!("data/specs/{label}.pspace")).display().to_string()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn solve_oracle_and_validate() {
    let o = psw(&["solve", &spec("f_3_5_to_4"), "--learning", "during", "--trace"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("solution_length=6"));
    let o = psw(&["oracle", &spec("f_9_17_to_5")]);
    assert!(stdout(&o).contains("min_solution: 20"));
    let o = psw(&["validate", &spec("a_4_9_to_6")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("no findings"));
}

#[test]
fn validate_fails_on_blocking_findings() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("nogoal.pspace");
    std::fs::write(
        &f,
        "space s { var a : 0..2; op e(x) { pre: x > 0; eff: x := 0 } }\ninstance i of s { init: a = 1; }\n",
    )
    .unwrap();
    let o = psw(&["validate", p(&f)]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("goal"));
}

#[test]
fn parse_errors_carry_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.pspace");
    std::fs::write(&f, "space s {\n  var a : 0..2\n}\n").unwrap();
    let o = psw(&["oracle", p(&f)]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.pspace:3:"));
}

#[test]
fn formulate_extract_and_replay_offline() {
    let dir = tempfile::tempdir().unwrap();
    let fixtures = root().join("data/fixtures/v_2_3_5_to_4");
    let problem = root().join("data/problems/v_2_3_5_to_4.txt");
    let o = psw(&[
        "formulate",
        p(&problem),
        "--replay",
        p(&fixtures),
        "--out",
        p(dir.path()),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = dir.path().join("v_2_3_5_to_4-pipeline.transcript.json");
    assert!(t.exists());
    let o = psw(&["extract", p(&t), "--replay", p(&fixtures), "--out", p(dir.path())]);
    assert!(stdout(&o).contains("min_solution 4"));
    assert!(dir.path().join("v_2_3_5_to_4-pipeline.extracted.pspace").exists());
    let o = psw(&["replay", p(&t)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6 node(s) replayed"));
    let o = psw(&[
        "formulate",
        p(&problem),
        "--oneshot",
        "solve",
        "--replay",
        p(&fixtures),
        "--out",
        p(dir.path()),
    ]);
    assert!(o.status.success());
}

#[test]
fn live_without_key_fails_cleanly() {
    let problem = root().join("data/problems/f_4_9_to_6.txt");
    let dir = tempfile::tempdir().unwrap();
    let o = psw(&["formulate", p(&problem), "--live", "--out", p(dir.path())]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("PSW_LLM_API_KEY"));
}

#[test]
fn bench_writes_csv_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = psw(&["bench", "--reps", "1", "--out", p(dir.path())]);
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 37);
    assert!(dir.path().join("bench.txt").exists());
}
