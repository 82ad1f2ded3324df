//! The bandit-driven transfer learner.
//!
//! Each learning episode is either an ε-greedy episode or, with probability
//! `p(k)`, a reuse episode of the source policy picked by the UCB rule. Reuse
//! episodes never take greedy actions, so every arm's reward distribution is
//! fixed while the table changes underneath it.

use alloc::vec::Vec;

use rand::Rng;

use crate::bandit::{BanditStats, PolicyLibrary, SelectionSchedule, UcbRule};
use crate::episode::SourceCounts;
use crate::gridworld::GridMap;
use crate::log::{Choice, LearningLog, RunSettings};
use crate::reuse::{pi_reuse, ReuseSchedule};
use crate::rng::RunStreams;
use crate::tabular::{record, run_episode_egreedy, LearningParams, QTable};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SelectionConfig {
    pub schedule: SelectionSchedule,
    pub reuse: ReuseSchedule,
    pub ucb: UcbRule,
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        self.schedule.validate()?;
        self.reuse.validate()?;
        self.ucb.validate()
    }
}

pub fn pi_selection(
    map: &GridMap,
    library: &PolicyLibrary,
    config: &SelectionConfig,
    params: &LearningParams,
    settings: &RunSettings,
    streams: &mut RunStreams,
) -> Result<(QTable, LearningLog)> {
    config.validate()?;
    params.validate()?;
    settings.validate()?;
    let n = library.len();
    let mut q = QTable::for_map(map);
    let mut log = LearningLog::with_capacity(settings.episodes);

    let mut initial = Vec::with_capacity(n);
    for j in 0..n {
        let mut sources = SourceCounts::default();
        let outcome = pi_reuse(
            library.policy(j),
            map,
            &mut q,
            &config.reuse,
            params,
            &mut streams.learn,
            &mut sources,
        );
        initial.push(outcome.ret);
        let k = j as i64 - n as i64;
        log.init.push(record(
            map,
            &q,
            k,
            Choice::Source(j),
            outcome,
            sources,
            params,
            settings,
            streams,
        ));
    }
    let mut stats = BanditStats::from_initial(&initial);

    for k in 1..=settings.episodes {
        let u: f64 = streams.select.gen();
        let mut sources = SourceCounts::default();
        let (choice, outcome) = if u >= config.schedule.p(k as u64) {
            let outcome =
                run_episode_egreedy(map, &mut q, params, &mut streams.learn, &mut sources);
            (Choice::EGreedy, outcome)
        } else {
            let j = stats.pick(config.ucb);
            let outcome = pi_reuse(
                library.policy(j),
                map,
                &mut q,
                &config.reuse,
                params,
                &mut streams.learn,
                &mut sources,
            );
            stats.credit(j, outcome.ret);
            (Choice::Source(j), outcome)
        };
        log.episodes.push(record(
            map, &q, k as i64, choice, outcome, sources, params, settings, streams,
        ));
    }
    log.bandit = Some(stats);
    Ok((q, log))
}
