//! PRQL baseline: softmax selection among the greedy policy and the source
//! policies, with a temperature that rises every episode.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::bandit::PolicyLibrary;
use crate::episode::SourceCounts;
use crate::gridworld::GridMap;
use crate::log::{Choice, LearningLog, RunSettings};
use crate::reuse::{reuse_episode, Fallback, ReuseSchedule};
use crate::rng::RunStreams;
use crate::tabular::{record, run_episode_greedy, LearningParams, QTable};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PrqlParams {
    pub tau0: f64,
    /// Temperature increment per episode.
    pub dtau: f64,
    pub reuse: ReuseSchedule,
}

impl Default for PrqlParams {
    fn default() -> Self {
        Self {
            tau0: 0.0,
            dtau: 0.05,
            reuse: ReuseSchedule::default(),
        }
    }
}

impl PrqlParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau0 >= 0.0 && self.dtau >= 0.0) {
            return Err(Error::Config(format!(
                "PRQL temperatures must be non-negative, got tau0={} dtau={}",
                self.tau0, self.dtau
            )));
        }
        self.reuse.validate()
    }

    /// Temperature after `k` episodes.
    pub fn tau(&self, k: usize) -> f64 {
        self.tau0 + k as f64 * self.dtau
    }
}

/// `P(j) ∝ exp(tau · W_j)`, evaluated after subtracting `max W`.
pub fn softmax_probs(w: &[f64], tau: f64) -> Vec<f64> {
    assert!(!w.is_empty());
    let top = w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut p: Vec<f64> = w.iter().map(|&x| libm::exp(tau * (x - top))).collect();
    let z: f64 = p.iter().sum();
    for x in &mut p {
        *x /= z;
    }
    p
}

/// Draws an index from [`softmax_probs`].
pub fn softmax_select<R: Rng + ?Sized>(w: &[f64], tau: f64, rng: &mut R) -> usize {
    sample(&softmax_probs(w, tau), rng)
}

fn sample<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, &x) in p.iter().enumerate() {
        acc += x;
        if u < acc {
            return i;
        }
    }
    // u landed in the rounding gap above the last partial sum
    p.iter().rposition(|&x| x > 0.0).unwrap_or(p.len() - 1)
}

/// Runs PRQL for `settings.episodes` episodes. Index 0 of the softmax is the
/// greedy policy; index `j + 1` is library entry `j`. Every mean starts at 0
/// with zero uses.
pub fn prql(
    map: &GridMap,
    library: &PolicyLibrary,
    params: &PrqlParams,
    learn: &LearningParams,
    settings: &RunSettings,
    streams: &mut RunStreams,
) -> Result<(QTable, LearningLog)> {
    params.validate()?;
    learn.validate()?;
    settings.validate()?;
    let n = library.len();
    let mut q = QTable::for_map(map);
    let mut log = LearningLog::with_capacity(settings.episodes);
    let mut w = vec![0.0; n + 1];
    let mut uses = vec![0u64; n + 1];

    for k in 1..=settings.episodes {
        let probs = softmax_probs(&w, params.tau(k - 1));
        let pick = sample(&probs, &mut streams.select);
        let mut sources = SourceCounts::default();
        let (choice, outcome) = if pick == 0 {
            let outcome = run_episode_greedy(map, &mut q, learn, &mut streams.learn, &mut sources);
            (Choice::Greedy, outcome)
        } else {
            let outcome = reuse_episode(
                library.policy(pick - 1),
                map,
                &mut q,
                &params.reuse,
                Fallback::Greedy,
                learn,
                &mut streams.learn,
                &mut sources,
            );
            (Choice::Source(pick - 1), outcome)
        };
        w[pick] = (w[pick] * uses[pick] as f64 + outcome.ret) / (uses[pick] + 1) as f64;
        uses[pick] += 1;

        let mut rec = record(
            map, &q, k as i64, choice, outcome, sources, learn, settings, streams,
        );
        rec.probs = probs;
        log.episodes.push(rec);
    }
    log.final_probs = softmax_probs(&w, params.tau(settings.episodes));
    Ok((q, log))
}
