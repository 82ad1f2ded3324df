//! Stationary Bernoulli bandit simulations for checking UCB regret.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::bandit::{BanditStats, UcbRule};

/// Pseudo-regret `Σ_j Δ_j · T_j(N)` recorded at each requested pull count.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub checkpoints: Vec<u64>,
    pub regret: Vec<f64>,
    /// Pull counts per arm at the last checkpoint.
    pub pulls: Vec<u64>,
}

/// Plays `rule` on Bernoulli arms with the given means. Every arm is pulled
/// once first; those pulls count towards `N`. `checkpoints` must be sorted
/// and at least the number of arms.
pub fn simulate_bernoulli<R: Rng + ?Sized>(
    means: &[f64],
    checkpoints: &[u64],
    rule: UcbRule,
    rng: &mut R,
) -> RegretTrace {
    let n = means.len();
    assert!(n >= 1);
    assert!(checkpoints.windows(2).all(|w| w[0] <= w[1]));
    assert!(checkpoints.first().is_some_and(|&c| c >= n as u64));
    let best = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let gaps: Vec<f64> = means.iter().map(|m| best - m).collect();

    let draw = |j: usize, rng: &mut R| if rng.gen::<f64>() < means[j] { 1.0 } else { 0.0 };
    let initial: Vec<f64> = (0..n).map(|j| draw(j, rng)).collect();
    let mut stats = BanditStats::from_initial(&initial);
    let mut regret_now: f64 = gaps.iter().sum();
    let mut t = n as u64;
    let mut regret = vec![0.0; checkpoints.len()];
    for (slot, &target) in checkpoints.iter().enumerate() {
        while t < target {
            let j = stats.pick(rule);
            let r = draw(j, rng);
            stats.credit(j, r);
            regret_now += gaps[j];
            t += 1;
        }
        regret[slot] = regret_now;
    }
    RegretTrace {
        checkpoints: checkpoints.to_vec(),
        regret,
        pulls: stats.arms().iter().map(|a| a.pulls).collect(),
    }
}

/// Finite-time UCB1 upper bound `Σ_{Δ_j>0} 8 ln N / Δ_j + 5 Σ_j Δ_j`.
///
/// The second term uses the constant 5 rather than the tighter `1 + π²/3`.
pub fn ucb1_bound(means: &[f64], pulls: u64) -> f64 {
    let best = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_n = libm::log(pulls as f64);
    means
        .iter()
        .map(|m| best - m)
        .filter(|&d| d > 0.0)
        .map(|d| 8.0 * ln_n / d + 5.0 * d)
        .sum()
}
