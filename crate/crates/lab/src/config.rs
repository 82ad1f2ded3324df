//! Experiment configuration files.
//!
//! ```toml
//! name = "omega"
//! manifest = "../tasks.toml"
//! targets = ["omega"]
//! library = ["omega1", "omega2", "omega3", "omega4"]
//! library_dir = "../library"
//! algorithms = ["ours", "prql", "qlearning"]
//! episodes = 4000
//! seeds = 10            # or an explicit list, e.g. [3, 7, 11]
//! eval_episodes = 10
//! out = "../results/omega"
//!
//! [learning]            # alpha, gamma, epsilon, horizon
//! [reuse]               # psi0, upsilon
//! [selection]           # tau_p
//! [ucb]                 # rule = "ucb1" | "tuned" | "fixed-c", c = 0.0049
//! [prql]                # tau0, dtau, psi0, upsilon
//! [training]            # window, min_gain, cap_factor, patience, eval_episodes, seed
//! ```
//!
//! Relative paths are resolved against the directory of the config file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use polreuse_core::bandit::{SelectionSchedule, UcbRule};
use polreuse_core::log::RunSettings;
use polreuse_core::prql::PrqlParams;
use polreuse_core::reuse::ReuseSchedule;
use polreuse_core::selection::SelectionConfig;
use polreuse_core::LearningParams;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{line_col, read_text, LabError, LabResult};
use crate::manifest::{relative_to, Manifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// UCB1 source selection with π-reuse.
    Ours,
    Prql,
    #[serde(rename = "qlearning")]
    QLearning,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ours, Algorithm::Prql, Algorithm::QLearning];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ours => "ours",
            Algorithm::Prql => "prql",
            Algorithm::QLearning => "qlearning",
        }
    }

    pub fn uses_library(self) -> bool {
        self != Algorithm::QLearning
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected ours, prql or qlearning)"))
    }
}

/// Stopping rule for source-policy training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainingParams {
    /// Episodes between plateau checks.
    pub window: usize,
    /// Smallest evaluation gain over one window that still counts as progress.
    pub min_gain: f64,
    /// Episode cap as a multiple of the experiment's `episodes`.
    pub cap_factor: usize,
    /// Consecutive checks without a gain over the best score before stopping.
    pub patience: usize,
    /// Rollouts per plateau check, always drawn from the same fixed stream.
    pub eval_episodes: usize,
    pub seed: u64,
}

impl Default for TrainingParams {
    fn default() -> Self {
        Self {
            window: 500,
            min_gain: 0.005,
            cap_factor: 10,
            patience: 1,
            eval_episodes: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PrqlSection {
    tau0: f64,
    dtau: f64,
    psi0: f64,
    upsilon: f64,
}

impl Default for PrqlSection {
    fn default() -> Self {
        let p = PrqlParams::default();
        Self {
            tau0: p.tau0,
            dtau: p.dtau,
            psi0: p.reuse.psi0,
            upsilon: p.reuse.upsilon,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Seeds {
    Count(usize),
    List(Vec<u64>),
}

fn default_seeds() -> Seeds {
    Seeds::Count(10)
}
fn default_episodes() -> usize {
    4000
}
fn default_eval() -> usize {
    10
}
fn default_smoothing() -> usize {
    50
}
fn default_window() -> usize {
    100
}
fn default_algorithms() -> Vec<Algorithm> {
    Algorithm::ALL.to_vec()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    name: Option<String>,
    manifest: PathBuf,
    targets: Vec<String>,
    #[serde(default)]
    library: Vec<String>,
    library_dir: PathBuf,
    #[serde(default = "default_algorithms")]
    algorithms: Vec<Algorithm>,
    #[serde(default = "default_episodes")]
    episodes: usize,
    #[serde(default = "default_seeds")]
    seeds: Seeds,
    #[serde(default = "default_eval")]
    eval_episodes: usize,
    #[serde(default = "default_smoothing")]
    smoothing_window: usize,
    #[serde(default = "default_window")]
    selection_window: usize,
    out: Option<PathBuf>,
    #[serde(default)]
    learning: LearningParams,
    #[serde(default)]
    reuse: ReuseSchedule,
    #[serde(default)]
    selection: SelectionSchedule,
    #[serde(default)]
    ucb: UcbRule,
    #[serde(default)]
    prql: PrqlSection,
    #[serde(default)]
    training: TrainingParams,
}

/// A fully resolved experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub name: String,
    pub manifest: Manifest,
    pub targets: Vec<String>,
    pub library: Vec<String>,
    pub library_dir: PathBuf,
    pub algorithms: Vec<Algorithm>,
    pub episodes: usize,
    pub seeds: Vec<u64>,
    pub eval_episodes: usize,
    pub smoothing_window: usize,
    pub selection_window: usize,
    pub out: PathBuf,
    pub learning: LearningParams,
    pub selection: SelectionConfig,
    pub prql: PrqlParams,
    pub training: TrainingParams,
}

pub(crate) fn parse_toml<T: DeserializeOwned>(path: &Path, text: &str) -> LabResult<T> {
    toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
        LabError::parse(path, line, column, e.message().to_string())
    })
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> LabResult<ExperimentConfig> {
        let text = read_text(path)?;
        let file: ConfigFile = parse_toml(path, &text)?;
        let manifest = Manifest::load(&relative_to(path, &file.manifest))?;
        let seeds = match file.seeds {
            Seeds::Count(n) => (0..n as u64).collect(),
            Seeds::List(v) => v,
        };
        let name = file.name.unwrap_or_else(|| {
            path.file_stem()
                .map_or_else(|| "experiment".into(), |s| s.to_string_lossy().into_owned())
        });
        let out = file
            .out
            .map(|p| relative_to(path, &p))
            .unwrap_or_else(|| PathBuf::from("results").join(&name));
        let config = ExperimentConfig {
            name,
            manifest,
            targets: file.targets,
            library: file.library,
            library_dir: relative_to(path, &file.library_dir),
            algorithms: file.algorithms,
            episodes: file.episodes,
            seeds,
            eval_episodes: file.eval_episodes,
            smoothing_window: file.smoothing_window,
            selection_window: file.selection_window,
            out,
            learning: file.learning,
            selection: SelectionConfig {
                schedule: file.selection,
                reuse: file.reuse,
                ucb: file.ucb,
            },
            prql: PrqlParams {
                tau0: file.prql.tau0,
                dtau: file.prql.dtau,
                reuse: ReuseSchedule {
                    psi0: file.prql.psi0,
                    upsilon: file.prql.upsilon,
                },
            },
            training: file.training,
        };
        config
            .validate()
            .map_err(|e| LabError::Validation(format!("{}: {e}", path.display())))?;
        Ok(config)
    }

    pub fn settings(&self) -> RunSettings {
        RunSettings {
            episodes: self.episodes,
            eval_episodes: self.eval_episodes,
            ..RunSettings::default()
        }
    }

    /// Replaces the seed list with `n` consecutive seeds starting at `base`.
    pub fn reseed(&mut self, base: u64) {
        let n = self.seeds.len() as u64;
        self.seeds = (base..base + n).collect();
    }

    pub fn validate(&self) -> LabResult<()> {
        let fail = |m: String| Err(LabError::Validation(m));
        if self.seeds.is_empty() {
            return fail("at least one seed is required".into());
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return fail("seeds must be distinct".into());
        }
        if self.targets.is_empty() {
            return fail("at least one target task is required".into());
        }
        if self.algorithms.is_empty() {
            return fail("at least one algorithm is required".into());
        }
        if self.smoothing_window == 0 || self.selection_window == 0 {
            return fail("window sizes must be at least 1".into());
        }
        let t = &self.training;
        if t.window == 0 || t.cap_factor == 0 || t.patience == 0 || t.eval_episodes == 0 {
            return fail("training window, cap_factor, patience and eval_episodes must be at least 1".into());
        }
        if self.algorithms.iter().any(|a| a.uses_library()) && self.library.is_empty() {
            return fail("transfer algorithms need a non-empty library".into());
        }
        for t in self.targets.iter().chain(&self.library) {
            self.manifest.task(t)?;
        }
        self.settings().validate()?;
        self.learning.validate()?;
        self.selection.validate()?;
        self.prql.validate()?;
        Ok(())
    }
}
