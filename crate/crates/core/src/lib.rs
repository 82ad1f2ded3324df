//! Online source-policy selection for tabular reinforcement learning.
//!
//! The crate models a stochastic gridworld navigation domain and layers three
//! learners on top of a shared Q-table:
//!
//! - plain ε-greedy Q-learning ([`tabular::q_learning`]),
//! - bandit-driven policy reuse, where each source policy is an arm of a UCB
//!   bandit and reuse episodes mix the source policy with the random policy
//!   ([`selection::pi_selection`]),
//! - the PRQL baseline, which picks among the greedy policy and the sources
//!   with a rising-temperature softmax ([`prql::prql`]).
//!
//! Everything here is `no_std` with `alloc`. File formats, experiment
//! orchestration and the command line live in the companion `polreuse` crate.

#![no_std]
#![cfg_attr(test, allow(clippy::needless_range_loop))]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bandit;
pub mod episode;
mod error;
pub mod gridworld;
pub mod log;
pub mod oracle;
pub mod prql;
pub mod regret;
pub mod reuse;
pub mod rng;
pub mod selection;
pub mod tabular;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use gridworld::{Action, CellKind, GridMap, Position, StateId, Transition};
pub use tabular::{LearningParams, Policy, QTable};
