//! Shared episode loop and per-step logging.

use crate::gridworld::{Action, GridMap, StateId};
use crate::rng::EpisodeStreams;
use crate::tabular::{q_update, LearningParams, QTable};

/// Where an executed action came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ActionSource {
    /// The reused source policy.
    Past,
    /// The uniform random policy mixed into a reuse episode.
    Random,
    /// Argmax of the current Q-table.
    Greedy,
    /// The uniform branch of ε-greedy.
    Explore,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord {
    /// 0 for the first action of the episode.
    pub h: usize,
    pub state: StateId,
    pub action: Action,
    pub source: ActionSource,
    pub reward: f64,
    pub next: StateId,
    pub terminal: bool,
}

pub trait StepObserver {
    fn observe(&mut self, step: &StepRecord);
}

impl StepObserver for () {
    #[inline]
    fn observe(&mut self, _: &StepRecord) {}
}

impl StepObserver for alloc::vec::Vec<StepRecord> {
    fn observe(&mut self, step: &StepRecord) {
        self.push(*step);
    }
}

impl<O: StepObserver + ?Sized> StepObserver for &mut O {
    fn observe(&mut self, step: &StepRecord) {
        (**self).observe(step)
    }
}

/// Per-episode tally of action sources.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SourceCounts {
    pub past: u32,
    pub random: u32,
    pub greedy: u32,
    pub explore: u32,
}

impl SourceCounts {
    pub fn total(&self) -> u32 {
        self.past + self.random + self.greedy + self.explore
    }
}

impl StepObserver for SourceCounts {
    fn observe(&mut self, step: &StepRecord) {
        match step.source {
            ActionSource::Past => self.past += 1,
            ActionSource::Random => self.random += 1,
            ActionSource::Greedy => self.greedy += 1,
            ActionSource::Explore => self.explore += 1,
        }
    }
}

pub(crate) trait Table {
    fn table(&self) -> &QTable;
    fn learn(
        &mut self,
        s: StateId,
        a: Action,
        reward: f64,
        next: StateId,
        terminal: bool,
        params: &LearningParams,
    );
}

impl Table for &QTable {
    #[inline]
    fn table(&self) -> &QTable {
        self
    }

    #[inline]
    fn learn(&mut self, _: StateId, _: Action, _: f64, _: StateId, _: bool, _: &LearningParams) {}
}

impl Table for &mut QTable {
    #[inline]
    fn table(&self) -> &QTable {
        self
    }

    #[inline]
    fn learn(
        &mut self,
        s: StateId,
        a: Action,
        reward: f64,
        next: StateId,
        terminal: bool,
        params: &LearningParams,
    ) {
        q_update(self, s, a, reward, next, terminal, params);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeOutcome {
    /// Discounted return, accumulated as a running product of γ.
    pub ret: f64,
    pub steps: usize,
    /// Step index of the goal hit, if any.
    pub goal_step: Option<usize>,
}

/// Runs one episode of at most `params.horizon` steps from a sampled start.
///
/// `choose` receives the step index, the current state, the table and the
/// action stream. A mutable table receives a [`q_update`] for every
/// transition before the next choice; a shared one is only read.
pub(crate) fn run<T, F, O>(
    map: &GridMap,
    mut q: T,
    params: &LearningParams,
    streams: &mut EpisodeStreams,
    mut choose: F,
    obs: &mut O,
) -> EpisodeOutcome
where
    T: Table,
    F: FnMut(usize, StateId, &QTable, &mut crate::rng::Rng) -> (Action, ActionSource),
    O: StepObserver + ?Sized,
{
    let mut pos = map.sample_initial(&mut streams.start);
    let mut ret = 0.0;
    let mut discount = 1.0;
    let mut goal_step = None;
    let mut steps = 0;
    for h in 0..params.horizon {
        let s = map.discretize(pos);
        let (action, source) = choose(h, s, q.table(), &mut streams.action);
        let t = map.step(pos, action, &mut streams.noise);
        let next = map.discretize(t.next);
        q.learn(s, action, t.reward, next, t.terminal, params);
        obs.observe(&StepRecord {
            h,
            state: s,
            action,
            source,
            reward: t.reward,
            next,
            terminal: t.terminal,
        });
        ret += discount * t.reward;
        discount *= params.gamma;
        pos = t.next;
        steps = h + 1;
        if t.terminal {
            goal_step = Some(h);
            break;
        }
    }
    EpisodeOutcome {
        ret,
        steps,
        goal_step,
    }
}
