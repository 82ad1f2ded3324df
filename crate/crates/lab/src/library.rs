//! Training, persisting and loading source-policy libraries.

use std::path::{Path, PathBuf};

use polreuse_core::bandit::PolicyLibrary;
use polreuse_core::reuse::greedy_policy_from;
use polreuse_core::rng::{EpisodeStreams, RunStreams};
use polreuse_core::tabular::{evaluate_greedy, run_episode_egreedy};
use polreuse_core::{CellKind, GridMap, LearningParams, Policy, QTable};

use crate::config::{ExperimentConfig, TrainingParams};
use crate::error::{LabError, LabResult};
use crate::formats::{load_policy, save_policy};

/// Seed of the fixed stream used by every plateau check.
const PLATEAU_EVAL_SEED: u64 = 0x5eed_e7a1;

#[derive(Debug, Clone)]
pub struct TrainedPolicy {
    pub task: String,
    pub policy: Policy,
    pub table: QTable,
    pub episodes: usize,
    pub final_eval: f64,
}

/// True when following `policy` without noise reaches the goal from every
/// free cell within `horizon` steps.
pub fn reaches_goal_everywhere(map: &GridMap, policy: &Policy, horizon: usize) -> bool {
    map.free_cells().iter().all(|&start| {
        let mut s = start;
        for _ in 0..horizon {
            s = map.deterministic_next(s, policy.action(s));
            if map.kind(s) == CellKind::Goal {
                return true;
            }
        }
        false
    })
}

/// ε-greedy Q-learning on `map` until the greedy evaluation stops improving.
///
/// Every `window` episodes the greedy policy is scored on a fixed evaluation
/// stream. Training stops after `patience` consecutive checks that fail to
/// beat the best score so far by more than `min_gain`. Scores of zero never
/// count towards a plateau.
pub fn train_source_policy(
    task: &str,
    map: &GridMap,
    learning: &LearningParams,
    training: &TrainingParams,
    cap: usize,
    seed: u64,
) -> LabResult<TrainedPolicy> {
    learning.validate()?;
    let mut streams = RunStreams::from_seed(seed);
    let mut q = QTable::for_map(map);
    let mut best = f64::NEG_INFINITY;
    let mut flat = 0;
    let mut episodes = 0;
    let mut last_eval = 0.0;
    while episodes < cap {
        for _ in 0..training.window.min(cap - episodes) {
            run_episode_egreedy(map, &mut q, learning, &mut streams.learn, &mut ());
            episodes += 1;
        }
        let mut fixed = EpisodeStreams::from_seed(PLATEAU_EVAL_SEED);
        last_eval = evaluate_greedy(map, &q, training.eval_episodes, learning, &mut fixed);
        if last_eval > best + training.min_gain || last_eval <= 0.0 {
            flat = 0;
        } else {
            flat += 1;
        }
        best = best.max(last_eval);
        if flat >= training.patience {
            return Ok(TrainedPolicy {
                task: task.to_string(),
                policy: greedy_policy_from(&q, &mut streams.select),
                table: q,
                episodes,
                final_eval: last_eval,
            });
        }
    }
    Err(LabError::TrainingStalled {
        task: task.to_string(),
        episodes,
        last_eval,
    })
}

pub fn policy_path(dir: &Path, task: &str) -> PathBuf {
    dir.join(format!("{task}.policy"))
}

/// Trains one policy per library task and writes `<library_dir>/<task>.policy`.
/// Task `j` uses seed `training.seed + j`.
pub fn train_source_library(config: &ExperimentConfig) -> LabResult<Vec<TrainedPolicy>> {
    let cap = config.training.cap_factor * config.episodes;
    let trained = config
        .library
        .iter()
        .enumerate()
        .map(|(j, task)| {
            let map = config.manifest.task_map(task)?;
            train_source_policy(task, &map, &config.learning, &config.training, cap, config.training.seed + j as u64)
        })
        .collect::<LabResult<Vec<_>>>()?;
    let (w, h) = (config.manifest.map.width(), config.manifest.map.height());
    for t in &trained {
        save_policy(&policy_path(&config.library_dir, &t.task), w, h, &t.policy)?;
    }
    Ok(trained)
}

/// Reads the policy files named by the config's library list.
pub fn load_library(config: &ExperimentConfig) -> LabResult<PolicyLibrary> {
    let (w, h) = (config.manifest.map.width(), config.manifest.map.height());
    let entries = config
        .library
        .iter()
        .map(|task| {
            let path = policy_path(&config.library_dir, task);
            let file = load_policy(&path)?;
            if (file.width, file.height) != (w, h) {
                return Err(LabError::Validation(format!(
                    "{}: policy is {}x{}, map is {w}x{h}",
                    path.display(),
                    file.width,
                    file.height
                )));
            }
            Ok((task.clone(), file.policy))
        })
        .collect::<LabResult<Vec<_>>>()?;
    Ok(PolicyLibrary::new(entries)?)
}
