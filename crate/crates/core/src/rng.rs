//! Seeded random streams.
//!
//! One master seed per run is expanded into independent ChaCha8 streams that
//! share the key and differ in the stream number:
//!
//! | stream | use                                   |
//! |--------|---------------------------------------|
//! | 0      | learning: start states                |
//! | 1      | learning: motion noise                |
//! | 2      | learning: action choice and tie-breaks|
//! | 3      | episode-level selection draws         |
//! | 4      | evaluation: start states              |
//! | 5      | evaluation: motion noise              |
//! | 6      | evaluation: greedy tie-breaks         |
//!
//! Evaluation consumes only streams 4-6, so changing the number of
//! evaluation episodes never perturbs a learning trajectory.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

fn stream(seed: u64, n: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n);
    rng
}

/// Randomness consumed inside one episode.
#[derive(Debug, Clone)]
pub struct EpisodeStreams {
    pub start: ChaCha8Rng,
    pub noise: ChaCha8Rng,
    pub action: ChaCha8Rng,
}

impl EpisodeStreams {
    /// Streams 0-2 of `seed`.
    pub fn from_seed(seed: u64) -> Self {
        Self::at(seed, 0)
    }

    fn at(seed: u64, base: u64) -> Self {
        Self {
            start: stream(seed, base),
            noise: stream(seed, base + 1),
            action: stream(seed, base + 2),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunStreams {
    pub learn: EpisodeStreams,
    pub select: ChaCha8Rng,
    pub eval: EpisodeStreams,
}

impl RunStreams {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            learn: EpisodeStreams::at(seed, 0),
            select: stream(seed, 3),
            eval: EpisodeStreams::at(seed, 4),
        }
    }
}
