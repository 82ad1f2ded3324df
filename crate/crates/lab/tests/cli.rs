mod common;

use std::path::Path;
use std::process::{Command, Output};

use polreuse::export::read_curves;

fn polreuse(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polreuse"))
        .args(args)
        .current_dir(cwd)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn train_run_and_export() {
    let dir = tempfile::tempdir().unwrap();
    common::small_workspace(dir.path(), 40, "2");
    let o = polreuse(&["train-library", "small.toml"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("lib/near.policy").exists());

    let o = polreuse(&["run", "small.toml", "--algorithm", "ours,prql,qlearning"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(stdout.matches("final mean evaluation").count(), 3);
    let table = read_curves(&dir.path().join("out/t/curves.csv")).unwrap();
    assert_eq!(table.algorithms, ["ours", "prql", "qlearning"]);
    assert_eq!(table.episodes.len(), 40);

    let o = polreuse(&["export", "out/t/results.json", "again", "--smoothing-window", "3"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        std::fs::read(dir.path().join("again/curves.csv")).unwrap(),
        std::fs::read(dir.path().join("out/t/curves.csv")).unwrap()
    );
}

#[test]
fn qlearning_only_runs_without_a_library() {
    let dir = tempfile::tempdir().unwrap();
    common::small_workspace(dir.path(), 20, "2");
    let o = polreuse(&["run", "small.toml", "--algorithm", "qlearning", "--out", "q", "--seed", "5"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let table = read_curves(&dir.path().join("q/t/curves.csv")).unwrap();
    assert_eq!(table.algorithms, ["qlearning"]);
}

#[test]
fn missing_map_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    common::small_workspace(dir.path(), 20, "2");
    std::fs::remove_file(dir.path().join("small.map")).unwrap();
    let o = polreuse(&["run", "small.toml"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("small.map"), "{}", stderr(&o));
}

#[test]
fn config_errors_report_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let config = common::small_workspace(dir.path(), 20, "2");
    let text = std::fs::read_to_string(&config).unwrap().replace("episodes = 20", "episodes = twenty");
    std::fs::write(&config, &text).unwrap();
    let line = text.lines().position(|l| l.contains("twenty")).unwrap() + 1;
    let o = polreuse(&["run", "small.toml"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains(&format!("small.toml:{line}:")), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polreuse(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(polreuse(&["run", "x.toml", "--algorithm", "sarsa"], dir.path()).status.code(), Some(2));
}

#[test]
fn regret_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = polreuse(&["regret-suite", "--seeds", "20"], dir.path());
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().trim_end().ends_with("PASS"));
}

#[test]
fn oracle_suite_passes_and_rejects_bad_step_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let o = polreuse(&["oracle-suite", "--seeds", "2"], dir.path());
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().trim_end().ends_with("PASS"));
    let o = polreuse(&["oracle-suite", "--alpha", "0"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha"), "{}", stderr(&o));
}
