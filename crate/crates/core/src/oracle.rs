//! Explicit finite MDPs and a value-iteration solver, used as ground truth
//! for the learners.

use alloc::vec;
use alloc::vec::Vec;

use crate::gridworld::{Action, CellKind, GridMap, StateId};
use crate::tabular::QTable;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub next: usize,
    pub prob: f64,
    pub reward: f64,
    /// Ends the episode; no value is bootstrapped from `next`.
    pub terminal: bool,
}

/// `outcomes[s][a]` lists the possible results of taking `a` in `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMdp {
    outcomes: Vec<Vec<Vec<Outcome>>>,
}

impl FiniteMdp {
    /// Checks that every state has the same number of actions and that every
    /// outcome list is a probability distribution.
    pub fn new(outcomes: Vec<Vec<Vec<Outcome>>>) -> Result<Self> {
        let states = outcomes.len();
        let actions = outcomes.first().map_or(0, Vec::len);
        if states == 0 || actions == 0 {
            return Err(Error::Invariant("MDP needs states and actions".into()));
        }
        for row in &outcomes {
            if row.len() != actions {
                return Err(Error::Invariant("ragged action sets".into()));
            }
            for dist in row {
                let total: f64 = dist.iter().map(|o| o.prob).sum();
                if (total - 1.0).abs() > 1e-9
                    || dist.iter().any(|o| o.prob < 0.0 || o.next >= states)
                {
                    return Err(Error::Invariant("transition row is not a distribution".into()));
                }
            }
        }
        Ok(Self { outcomes })
    }

    /// Noise-free dynamics of `map`. Wall and goal cells are absorbing with
    /// zero reward; entering a goal pays 1 and terminates.
    pub fn from_grid(map: &GridMap) -> Self {
        let outcomes = (0..map.state_count())
            .map(|i| {
                let s = StateId(i);
                Action::ALL
                    .iter()
                    .map(|&a| {
                        if map.kind(s) != CellKind::Free {
                            return vec![Outcome {
                                next: i,
                                prob: 1.0,
                                reward: 0.0,
                                terminal: true,
                            }];
                        }
                        let t = map.deterministic_next(s, a);
                        let goal = map.kind(t) == CellKind::Goal;
                        vec![Outcome {
                            next: t.0,
                            prob: 1.0,
                            reward: if goal { 1.0 } else { 0.0 },
                            terminal: goal,
                        }]
                    })
                    .collect()
            })
            .collect();
        Self { outcomes }
    }

    pub fn states(&self) -> usize {
        self.outcomes.len()
    }

    pub fn actions(&self) -> usize {
        self.outcomes[0].len()
    }

    pub fn outcomes(&self, s: usize, a: usize) -> &[Outcome] {
        &self.outcomes[s][a]
    }

    /// One Bellman optimality backup of `q`.
    pub fn backup(&self, q: &[Vec<f64>], gamma: f64) -> Vec<Vec<f64>> {
        self.outcomes
            .iter()
            .map(|row| {
                row.iter()
                    .map(|dist| {
                        dist.iter()
                            .map(|o| {
                                let boot = if o.terminal {
                                    0.0
                                } else {
                                    q[o.next].iter().copied().fold(f64::NEG_INFINITY, f64::max)
                                };
                                o.prob * (o.reward + gamma * boot)
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

pub const MAX_ITERATIONS: usize = 100_000;

/// Optimal action values, iterated until successive sweeps differ by less
/// than `tol` in sup-norm.
pub fn value_iteration(mdp: &FiniteMdp, gamma: f64, tol: f64) -> Result<Vec<Vec<f64>>> {
    let mut q = vec![vec![0.0; mdp.actions()]; mdp.states()];
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let next = mdp.backup(&q, gamma);
        residual = sup_diff(&q, &next);
        q = next;
        if residual < tol {
            return Ok(q);
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}

/// [`value_iteration`] packed into a four-action table.
pub fn value_iteration_oracle(mdp: &FiniteMdp, gamma: f64, tol: f64) -> Result<QTable> {
    assert_eq!(mdp.actions(), Action::COUNT, "QTable holds exactly four actions");
    let q = value_iteration(mdp, gamma, tol)?;
    Ok(QTable::from_rows(
        q.into_iter().map(|r| [r[0], r[1], r[2], r[3]]).collect(),
    ))
}

pub fn sup_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u - v).abs()))
        .fold(0.0, f64::max)
}

/// Actions whose value is within `tol` of the row maximum.
pub fn optimal_actions(q: &QTable, s: StateId, tol: f64) -> Vec<Action> {
    let best = q.max(s);
    Action::ALL
        .iter()
        .copied()
        .filter(|&a| q.get(s, a) >= best - tol)
        .collect()
}
