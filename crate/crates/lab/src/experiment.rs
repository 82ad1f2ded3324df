//! Multi-seed orchestration and aggregation.

use polreuse_core::bandit::PolicyLibrary;
use polreuse_core::log::{Choice, LearningLog};
use polreuse_core::prql::prql;
use polreuse_core::rng::RunStreams;
use polreuse_core::selection::pi_selection;
use polreuse_core::tabular::q_learning;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{LabError, LabResult};
use crate::library::load_library;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedRun {
    pub seed: u64,
    pub log: LearningLog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmRuns {
    pub algorithm: Algorithm,
    pub runs: Vec<SeedRun>,
}

/// Every log of one experiment on one target task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultSet {
    pub name: String,
    pub target: String,
    pub library: Vec<String>,
    pub episodes: usize,
    pub algorithms: Vec<AlgorithmRuns>,
}

/// Per-episode mean and sample standard deviation across seeds.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Curve {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

/// Share of episodes in one window that ran each policy, pooled over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionWindow {
    /// First and last episode of the window, 1-based and inclusive.
    pub start: usize,
    pub end: usize,
    pub egreedy: f64,
    pub greedy: f64,
    /// Indexed like the library.
    pub sources: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub algorithm: Algorithm,
    pub eval: Curve,
    pub expected_reward: Curve,
    pub running_average: Curve,
    pub selection: Vec<SelectionWindow>,
}

impl Curve {
    /// Aggregates equal-length series. Order of `series` does not matter:
    /// callers pass them sorted by seed.
    pub fn from_series(series: &[Vec<f64>]) -> Curve {
        let Some(first) = series.first() else {
            return Curve::default();
        };
        let n = series.len() as f64;
        let len = first.len();
        assert!(series.iter().all(|s| s.len() == len), "ragged series");
        let mut curve = Curve {
            mean: Vec::with_capacity(len),
            std: Vec::with_capacity(len),
        };
        for k in 0..len {
            let mean = series.iter().map(|s| s[k]).sum::<f64>() / n;
            let var = if series.len() > 1 {
                series.iter().map(|s| (s[k] - mean).powi(2)).sum::<f64>() / (n - 1.0)
            } else {
                0.0
            };
            curve.mean.push(mean);
            curve.std.push(var.sqrt());
        }
        curve
    }

    /// Trailing moving average over at most `window` points.
    pub fn smoothed(&self, window: usize) -> Curve {
        let smooth = |v: &[f64]| -> Vec<f64> {
            (0..v.len())
                .map(|k| {
                    let lo = (k + 1).saturating_sub(window);
                    v[lo..=k].iter().sum::<f64>() / (k + 1 - lo) as f64
                })
                .collect()
        };
        Curve {
            mean: smooth(&self.mean),
            std: smooth(&self.std),
        }
    }
}

impl AlgorithmRuns {
    /// Runs ordered by seed, so reductions do not depend on config order.
    pub fn by_seed(&self) -> Vec<&SeedRun> {
        let mut runs: Vec<&SeedRun> = self.runs.iter().collect();
        runs.sort_by_key(|r| r.seed);
        runs
    }

    pub fn aggregate(&self, sources: usize, window: usize) -> Aggregate {
        let runs = self.by_seed();
        let series = |f: &dyn Fn(&LearningLog) -> Vec<f64>| -> Vec<Vec<f64>> {
            runs.iter().map(|r| f(&r.log)).collect()
        };
        Aggregate {
            algorithm: self.algorithm,
            eval: Curve::from_series(&series(&|l| l.eval_curve().collect())),
            expected_reward: Curve::from_series(&series(&|l| {
                l.episodes.iter().map(|r| r.expected_reward).collect()
            })),
            running_average: Curve::from_series(&series(&|l| l.running_average())),
            selection: selection_windows(&runs, sources, window),
        }
    }
}

fn selection_windows(runs: &[&SeedRun], sources: usize, window: usize) -> Vec<SelectionWindow> {
    let episodes = runs.first().map_or(0, |r| r.log.episodes.len());
    (0..episodes)
        .step_by(window)
        .map(|lo| {
            let hi = (lo + window).min(episodes);
            let mut w = SelectionWindow {
                start: lo + 1,
                end: hi,
                egreedy: 0.0,
                greedy: 0.0,
                sources: vec![0.0; sources],
            };
            let total = ((hi - lo) * runs.len()) as f64;
            for r in runs {
                for rec in &r.log.episodes[lo..hi] {
                    match rec.choice {
                        Choice::EGreedy => w.egreedy += 1.0,
                        Choice::Greedy => w.greedy += 1.0,
                        Choice::Source(j) => w.sources[j] += 1.0,
                    }
                }
            }
            w.egreedy /= total;
            w.greedy /= total;
            w.sources.iter_mut().for_each(|s| *s /= total);
            w
        })
        .collect()
}

impl ResultSet {
    pub fn is_empty(&self) -> bool {
        self.algorithms.iter().all(|a| a.runs.is_empty())
    }

    pub fn runs(&self, algorithm: Algorithm) -> Option<&AlgorithmRuns> {
        self.algorithms.iter().find(|a| a.algorithm == algorithm)
    }

    pub fn aggregates(&self, window: usize) -> Vec<Aggregate> {
        self.algorithms
            .iter()
            .map(|a| a.aggregate(self.library.len(), window))
            .collect()
    }

    /// Structural checks done before export.
    pub fn validate(&self) -> LabResult<()> {
        if self.is_empty() {
            return Err(LabError::Validation("result set has no runs".into()));
        }
        for a in &self.algorithms {
            if a.runs.is_empty() {
                return Err(LabError::Validation(format!("no runs for {}", a.algorithm)));
            }
            for r in &a.runs {
                if r.log.episodes.len() != self.episodes {
                    return Err(LabError::Validation(format!(
                        "{} seed {}: {} episodes, expected {}",
                        a.algorithm,
                        r.seed,
                        r.log.episodes.len(),
                        self.episodes
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Runs one algorithm for one seed.
pub fn run_single(
    config: &ExperimentConfig,
    target: &str,
    algorithm: Algorithm,
    library: Option<&PolicyLibrary>,
    seed: u64,
) -> LabResult<LearningLog> {
    let map = config.manifest.task_map(target)?;
    let settings = config.settings();
    let mut streams = RunStreams::from_seed(seed);
    let need = || {
        library.ok_or_else(|| LabError::Validation(format!("{algorithm} needs a source library")))
    };
    let (_, log) = match algorithm {
        Algorithm::Ours => pi_selection(&map, need()?, &config.selection, &config.learning, &settings, &mut streams)?,
        Algorithm::Prql => prql(&map, need()?, &config.prql, &config.learning, &settings, &mut streams)?,
        Algorithm::QLearning => q_learning(&map, &config.learning, &settings, &mut streams)?,
    };
    Ok(log)
}

/// Runs every (algorithm, seed) pair of `target` in parallel. Results are
/// collected in config order; any failure discards the whole set.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    target: &str,
    library: Option<&PolicyLibrary>,
) -> LabResult<ResultSet> {
    config.validate()?;
    let jobs: Vec<(Algorithm, u64)> = config
        .algorithms
        .iter()
        .flat_map(|&a| config.seeds.iter().map(move |&s| (a, s)))
        .collect();
    let logs = jobs
        .par_iter()
        .map(|&(a, s)| run_single(config, target, a, library, s))
        .collect::<LabResult<Vec<_>>>()?;
    let mut logs = logs.into_iter();
    let algorithms = config
        .algorithms
        .iter()
        .map(|&algorithm| AlgorithmRuns {
            algorithm,
            runs: config
                .seeds
                .iter()
                .map(|&seed| SeedRun {
                    seed,
                    log: logs.next().expect("one log per job"),
                })
                .collect(),
        })
        .collect();
    Ok(ResultSet {
        name: config.name.clone(),
        target: target.to_string(),
        library: if config.algorithms.iter().any(|a| a.uses_library()) {
            config.library.clone()
        } else {
            Vec::new()
        },
        episodes: config.episodes,
        algorithms,
    })
}

/// Loads the library from disk when needed and runs `target`.
pub fn run_experiment(config: &ExperimentConfig, target: &str) -> LabResult<ResultSet> {
    let library = if config.algorithms.iter().any(|a| a.uses_library()) {
        Some(load_library(config)?)
    } else {
        None
    };
    run_experiment_with(config, target, library.as_ref())
}
