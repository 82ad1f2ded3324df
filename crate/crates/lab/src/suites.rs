//! Self-checks exposed on the command line.

use std::fmt;

use polreuse_core::bandit::UcbRule;
use polreuse_core::log::RunSettings;
use polreuse_core::oracle::{optimal_actions, value_iteration_oracle, FiniteMdp};
use polreuse_core::regret::{simulate_bernoulli, ucb1_bound};
use polreuse_core::rng::{Rng, RunStreams};
use polreuse_core::tabular::{greedy_action, q_learning};
use polreuse_core::{GridMap, LearningParams, StateId};
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::LabResult;

pub const REGRET_MEANS: [f64; 4] = [0.9, 0.5, 0.4, 0.3];

#[derive(Debug, Clone, PartialEq)]
pub struct RegretRow {
    pub pulls: u64,
    pub mean_regret: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretReport {
    pub means: Vec<f64>,
    pub seeds: u64,
    pub rows: Vec<RegretRow>,
    /// Mean regret at the last checkpoint over mean regret at the first.
    pub growth: f64,
    pub max_growth: f64,
}

impl RegretReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.mean_regret <= r.bound) && self.growth <= self.max_growth
    }
}

impl fmt::Display for RegretReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "UCB1 on Bernoulli arms {:?}, {} seeds", self.means, self.seeds)?;
        for r in &self.rows {
            let verdict = if r.mean_regret <= r.bound { "ok" } else { "FAIL" };
            writeln!(f, "  N={:>7}  regret {:>9.3}  bound {:>9.3}  {verdict}", r.pulls, r.mean_regret, r.bound)?;
        }
        let verdict = if self.growth <= self.max_growth { "ok" } else { "FAIL" };
        writeln!(f, "  growth ratio {:.4} (limit {})  {verdict}", self.growth, self.max_growth)?;
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Mean pseudo-regret of UCB1 at each checkpoint, seeds `0..seeds`.
pub fn regret_suite(means: &[f64], checkpoints: &[u64], seeds: u64) -> RegretReport {
    let traces: Vec<Vec<f64>> = (0..seeds)
        .into_par_iter()
        .map(|s| simulate_bernoulli(means, checkpoints, UcbRule::Ucb1, &mut Rng::seed_from_u64(s)).regret)
        .collect();
    let rows: Vec<RegretRow> = checkpoints
        .iter()
        .enumerate()
        .map(|(i, &n)| RegretRow {
            pulls: n,
            mean_regret: traces.iter().map(|t| t[i]).sum::<f64>() / seeds as f64,
            bound: ucb1_bound(means, n),
        })
        .collect();
    let growth = rows.last().unwrap().mean_regret / rows[0].mean_regret;
    RegretReport {
        means: means.to_vec(),
        seeds,
        rows,
        growth,
        max_growth: 1.6,
    }
}

/// 5×5 open room with the goal in the far corner.
pub const ORACLE_MAP: &str = "\
#######
#.....#
#.....#
#.....#
#.....#
#....G#
#######
";

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRun {
    pub seed: u64,
    pub max_error: f64,
    pub policy_optimal: bool,
}

/// Step size for the oracle suite. Transitions are deterministic, so there is
/// no sampling noise to average out; at the navigation default of 0.05,
/// rarely explored actions are still far from `Q*` after 20000 episodes.
pub const ORACLE_ALPHA: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub episodes: usize,
    pub alpha: f64,
    pub tolerance: f64,
    pub runs: Vec<OracleRun>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.policy_optimal && r.max_error <= self.tolerance)
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Q-learning vs value iteration, {} episodes, alpha {}, deterministic 5x5 room",
            self.episodes, self.alpha
        )?;
        for r in &self.runs {
            writeln!(
                f,
                "  seed {:>2}  max |Q - Q*| {:.5}  greedy optimal: {}",
                r.seed, r.max_error, r.policy_optimal
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Learns `map` (noise removed) with Q-learning and compares against the
/// value-iteration optimum over every free and goal state.
pub fn oracle_check(map: &GridMap, episodes: usize, seed: u64, params: &LearningParams) -> LabResult<OracleRun> {
    let map = map.clone().with_noise(0.0);
    let optimum = value_iteration_oracle(&FiniteMdp::from_grid(&map), params.gamma, 1e-10)?;
    let settings = RunSettings {
        episodes,
        eval_episodes: 1,
        ..RunSettings::default()
    };
    let (q, _) = q_learning(&map, params, &settings, &mut RunStreams::from_seed(seed))?;
    let mut rng = Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    let mut policy_optimal = true;
    for &s in map.free_cells() {
        let s: StateId = s;
        for (a, b) in q.row(s).iter().zip(optimum.row(s)) {
            max_error = max_error.max((a - b).abs());
        }
        policy_optimal &= optimal_actions(&optimum, s, 1e-9).contains(&greedy_action(&q, s, &mut rng));
    }
    Ok(OracleRun {
        seed,
        max_error,
        policy_optimal,
    })
}

pub fn oracle_suite(episodes: usize, seeds: u64, alpha: f64) -> LabResult<OracleReport> {
    let map = GridMap::parse(ORACLE_MAP)?;
    let params = LearningParams {
        alpha,
        ..LearningParams::default()
    };
    params.validate()?;
    let runs = (0..seeds)
        .into_par_iter()
        .map(|s| oracle_check(&map, episodes, s, &params))
        .collect::<LabResult<Vec<_>>>()?;
    Ok(OracleReport {
        episodes,
        alpha,
        tolerance: 0.05,
        runs,
    })
}
