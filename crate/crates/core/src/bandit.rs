//! UCB arm statistics and index rules over a library of source policies.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::tabular::Policy;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ArmStats {
    /// Mean of every reward credited to the arm.
    pub mean: f64,
    pub pulls: u64,
    pub sum_sq: f64,
}

impl ArmStats {
    /// Empirical variance `sum_sq / T − mean²`, clamped at zero.
    pub fn variance(&self) -> f64 {
        if self.pulls == 0 {
            return 0.0;
        }
        (self.sum_sq / self.pulls as f64 - self.mean * self.mean).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BanditStats {
    arms: Vec<ArmStats>,
}

impl BanditStats {
    /// One initial pull per arm with the given rewards.
    pub fn from_initial(rewards: &[f64]) -> Self {
        assert!(!rewards.is_empty(), "bandit needs at least one arm");
        Self {
            arms: rewards
                .iter()
                .map(|&r| ArmStats {
                    mean: r,
                    pulls: 1,
                    sum_sq: r * r,
                })
                .collect(),
        }
    }

    /// Arms with explicit means and pull counts; `sum_sq` is set as if every
    /// pull returned the mean.
    pub fn from_means(means: &[f64], pulls: &[u64]) -> Self {
        assert_eq!(means.len(), pulls.len());
        assert!(pulls.iter().all(|&t| t >= 1), "every arm needs a pull");
        Self {
            arms: means
                .iter()
                .zip(pulls)
                .map(|(&m, &t)| ArmStats {
                    mean: m,
                    pulls: t,
                    sum_sq: m * m * t as f64,
                })
                .collect(),
        }
    }

    pub fn arms(&self) -> &[ArmStats] {
        &self.arms
    }

    pub fn len(&self) -> usize {
        self.arms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arms.is_empty()
    }

    pub fn total_pulls(&self) -> u64 {
        self.arms.iter().map(|a| a.pulls).sum()
    }

    /// Folds reward `r` into arm `j`'s running mean.
    pub fn credit(&mut self, j: usize, r: f64) {
        let arm = &mut self.arms[j];
        arm.mean = (arm.mean * arm.pulls as f64 + r) / (arm.pulls + 1) as f64;
        arm.pulls += 1;
        arm.sum_sq += r * r;
    }

    /// Upper confidence index of arm `j` under `rule`.
    pub fn index(&self, j: usize, rule: UcbRule) -> f64 {
        let ln_total = libm::log(self.total_pulls() as f64);
        self.index_with(j, rule, ln_total)
    }

    fn index_with(&self, j: usize, rule: UcbRule, ln_total: f64) -> f64 {
        let arm = &self.arms[j];
        let t = arm.pulls as f64;
        let c = match rule {
            UcbRule::Ucb1 => 2.0,
            UcbRule::FixedC(c) => c,
            UcbRule::Tuned => {
                let bonus = libm::sqrt(2.0 * ln_total / t);
                (arm.variance() + bonus).min(0.25)
            }
        };
        arm.mean + libm::sqrt(c * ln_total / t)
    }

    /// Arm with the largest index; ties go to the lowest index.
    pub fn pick(&self, rule: UcbRule) -> usize {
        let ln_total = libm::log(self.total_pulls() as f64);
        let mut best = 0;
        let mut best_index = f64::NEG_INFINITY;
        for j in 0..self.arms.len() {
            let idx = self.index_with(j, rule, ln_total);
            if idx > best_index {
                best = j;
                best_index = idx;
            }
        }
        best
    }
}

/// Index rule. Every variant has the form `mean + sqrt(c · ln(ΣT) / T_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "rule", content = "c", rename_all = "kebab-case"))]
pub enum UcbRule {
    /// `c = 2`.
    Ucb1,
    /// Variance-adaptive `c_j = min(1/4, σ̂_j² + sqrt(2 ln(ΣT) / T_j))`.
    Tuned,
    /// Constant `c` for every arm.
    FixedC(f64),
}

impl Default for UcbRule {
    fn default() -> Self {
        UcbRule::FixedC(0.0049)
    }
}

impl UcbRule {
    pub fn validate(&self) -> Result<()> {
        match *self {
            UcbRule::FixedC(c) if c.is_nan() || c <= 0.0 => {
                Err(Error::Config(format!("UCB coefficient must be positive, got {c}")))
            }
            _ => Ok(()),
        }
    }
}

pub fn ucb1_pick(stats: &BanditStats) -> usize {
    stats.pick(UcbRule::Ucb1)
}

/// Tuned pick. `rule` must be [`UcbRule::Tuned`] or [`UcbRule::FixedC`].
pub fn ucb_tuned_pick(stats: &BanditStats, rule: UcbRule) -> usize {
    debug_assert!(!matches!(rule, UcbRule::Ucb1));
    stats.pick(rule)
}

pub fn credit(stats: &mut BanditStats, j: usize, r: f64) {
    stats.credit(j, r)
}

/// Probability of a reuse episode at learning episode `k`:
/// `p(k) = tau_p / (k + tau_p) = 1 − k / (k + tau_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct SelectionSchedule {
    pub tau_p: f64,
}

impl Default for SelectionSchedule {
    fn default() -> Self {
        Self { tau_p: 1500.0 }
    }
}

impl SelectionSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_p >= 0.0 && self.tau_p.is_finite()) {
            return Err(Error::Config(format!(
                "tau_p must be finite and non-negative, got {}",
                self.tau_p
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn p(&self, k: u64) -> f64 {
        p_schedule(k, self)
    }
}

#[inline]
pub fn p_schedule(k: u64, schedule: &SelectionSchedule) -> f64 {
    if k == 0 {
        return 1.0;
    }
    schedule.tau_p / (k as f64 + schedule.tau_p)
}

/// Ordered, named, non-empty set of frozen source policies.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyLibrary {
    entries: Vec<(String, Policy)>,
}

impl PolicyLibrary {
    pub fn new(entries: Vec<(String, Policy)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("policy library is empty".into()));
        }
        for (i, (name, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::Config(format!("duplicate policy name {name:?}")));
            }
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn policy(&self, j: usize) -> &Policy {
        &self.entries[j].1
    }

    pub fn name(&self, j: usize) -> &str {
        &self.entries[j].0
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }
}
