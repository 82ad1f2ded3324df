//! Policy reuse: episodes that follow a fixed source policy with a
//! probability decaying geometrically over the steps of the episode.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::episode::{self, ActionSource, EpisodeOutcome, StepObserver};
use crate::gridworld::{Action, GridMap, StateId};
use crate::rng::EpisodeStreams;
use crate::tabular::{greedy_action, LearningParams, Policy, QTable};
use crate::{Error, Result};

/// `ψ_h = psi0 · upsilon^h`, with `h = 0` for the first action.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct ReuseSchedule {
    pub psi0: f64,
    pub upsilon: f64,
}

impl Default for ReuseSchedule {
    fn default() -> Self {
        Self {
            psi0: 1.0,
            upsilon: 0.95,
        }
    }
}

impl ReuseSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.psi0) || !(0.0..=1.0).contains(&self.upsilon) {
            return Err(Error::Config(format!(
                "reuse schedule needs psi0 and upsilon in [0, 1], got {} and {}",
                self.psi0, self.upsilon
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn psi(&self, h: usize) -> f64 {
        self.psi0 * libm::pow(self.upsilon, h as f64)
    }
}

/// What a reuse episode does when it does not follow the source policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fallback {
    /// Uniform random action. Keeps the episode's return distribution
    /// independent of the table being learned.
    Random,
    /// Greedy action on the current table, as PRQL does.
    Greedy,
}

/// Executes one reuse episode and updates `q` on every transition.
pub fn pi_reuse<O: StepObserver + ?Sized>(
    past: &Policy,
    map: &GridMap,
    q: &mut QTable,
    schedule: &ReuseSchedule,
    params: &LearningParams,
    streams: &mut EpisodeStreams,
    obs: &mut O,
) -> EpisodeOutcome {
    reuse_episode(past, map, q, schedule, Fallback::Random, params, streams, obs)
}

#[allow(clippy::too_many_arguments)]
pub fn reuse_episode<O: StepObserver + ?Sized>(
    past: &Policy,
    map: &GridMap,
    q: &mut QTable,
    schedule: &ReuseSchedule,
    fallback: Fallback,
    params: &LearningParams,
    streams: &mut EpisodeStreams,
    obs: &mut O,
) -> EpisodeOutcome {
    debug_assert_eq!(past.states(), map.state_count());
    episode::run(
        map,
        q,
        params,
        streams,
        |h, s, q, rng| {
            if rng.gen::<f64>() < schedule.psi(h) {
                (past.action(s), ActionSource::Past)
            } else {
                match fallback {
                    Fallback::Random => (Action::random(rng), ActionSource::Random),
                    Fallback::Greedy => (greedy_action(q, s, rng), ActionSource::Greedy),
                }
            }
        },
        obs,
    )
}

/// Freezes the argmax of `q` into a tabular policy. Ties are resolved once,
/// here, with `rng`.
pub fn greedy_policy_from<R: Rng + ?Sized>(q: &QTable, rng: &mut R) -> Policy {
    let actions: Vec<Action> = (0..q.states())
        .map(|i| greedy_action(q, StateId(i), rng))
        .collect();
    Policy::new(actions)
}
