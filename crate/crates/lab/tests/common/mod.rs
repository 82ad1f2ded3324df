#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

/// Two rooms joined by one door; the map's own goal is task `t`.
pub const SMALL_MAP: &str = "\
###########
#....#....#
#.........#
#....#...G#
###########
";

pub const SMALL_TASKS: &str = r#"map = "small.map"

[tasks.t]
goal = [9, 3]

[tasks.near]
goal = [8, 1]

[tasks.far]
goal = [1, 1]
"#;

pub fn small_config(episodes: usize, seeds: &str) -> String {
    format!(
        r#"name = "small"
manifest = "tasks.toml"
targets = ["t"]
library = ["near", "far"]
library_dir = "lib"
algorithms = ["ours", "prql", "qlearning"]
episodes = {episodes}
seeds = {seeds}
eval_episodes = 3
smoothing_window = 5
selection_window = 10
out = "out"

[selection]
tau_p = 50.0

[training]
window = 100
cap_factor = 50
patience = 4
eval_episodes = 50
"#
    )
}

/// Writes the small map, manifest and a config into `dir`, returning the config path.
pub fn small_workspace(dir: &Path, episodes: usize, seeds: &str) -> PathBuf {
    fs::write(dir.join("small.map"), SMALL_MAP).unwrap();
    fs::write(dir.join("tasks.toml"), SMALL_TASKS).unwrap();
    let config = dir.join("small.toml");
    fs::write(&config, small_config(episodes, seeds)).unwrap();
    config
}

pub fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn preset(name: &str) -> PathBuf {
    repo_root().join("assets/configs").join(format!("{name}.toml"))
}
