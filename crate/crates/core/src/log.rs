//! Per-episode learning records shared by all learners.

use alloc::vec::Vec;

use crate::bandit::BanditStats;
use crate::episode::SourceCounts;
use crate::tabular::StateSet;
use crate::{Error, Result};

/// Policy executed in an episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Choice {
    /// ε-greedy on the current table.
    EGreedy,
    /// Fully greedy on the current table (PRQL's own policy).
    Greedy,
    /// Reuse of the source policy at this library index.
    Source(usize),
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EpisodeRecord {
    /// 1-based learning episode; initialisation episodes are negative.
    pub k: i64,
    pub choice: Choice,
    /// Discounted return of the learning episode itself.
    pub ret: f64,
    /// Mean greedy evaluation return after the episode.
    pub eval: f64,
    pub expected_reward: f64,
    pub sources: SourceCounts,
    /// PRQL only: softmax probabilities used for this episode's draw, greedy
    /// policy first, then the library in order.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub probs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LearningLog {
    /// Bandit initialisation episodes, one per source policy.
    pub init: Vec<EpisodeRecord>,
    /// Exactly `K` learning episodes.
    pub episodes: Vec<EpisodeRecord>,
    /// Final bandit statistics, for the bandit learner.
    pub bandit: Option<BanditStats>,
    /// PRQL only: selection probabilities after the last update.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub final_probs: Vec<f64>,
}

impl LearningLog {
    pub fn with_capacity(episodes: usize) -> Self {
        Self {
            episodes: Vec::with_capacity(episodes),
            ..Self::default()
        }
    }

    pub fn eval_curve(&self) -> impl Iterator<Item = f64> + '_ {
        self.episodes.iter().map(|r| r.eval)
    }

    /// Running mean of learning-episode returns, `W(k)`.
    pub fn running_average(&self) -> Vec<f64> {
        let mut sum = 0.0;
        self.episodes
            .iter()
            .enumerate()
            .map(|(i, r)| {
                sum += r.ret;
                sum / (i + 1) as f64
            })
            .collect()
    }
}

/// Run length and per-episode measurement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunSettings {
    /// Learning episodes `K`.
    pub episodes: usize,
    /// Greedy evaluation rollouts after each episode.
    pub eval_episodes: usize,
    pub expected_reward_states: StateSet,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            episodes: 4000,
            eval_episodes: 10,
            expected_reward_states: StateSet::Open,
        }
    }
}

impl RunSettings {
    pub fn validate(&self) -> Result<()> {
        if self.episodes == 0 {
            return Err(Error::Config("episode count must be at least 1".into()));
        }
        if self.eval_episodes == 0 {
            return Err(Error::Config("eval_episodes must be at least 1".into()));
        }
        Ok(())
    }
}
