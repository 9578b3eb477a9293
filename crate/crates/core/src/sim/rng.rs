//! Seeded randomness with independent substreams.
//!
//! Backed by ChaCha8. A game's stream is addressed by a seed and a stream
//! number, so any game can be replayed in isolation and parallel runs draw
//! exactly what serial runs draw.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::strategy::Strategy;

/// Stream used to place robots and the ball.
pub const LAYOUT_STREAM: u64 = 0;

/// Stream used for the interception draws of one strategy's game.
pub fn game_stream(strategy: Strategy) -> u64 {
    1 + strategy.index()
}

/// SplitMix64 finalizer; maps `(master, index)` to a well-mixed child seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng::with_stream(seed, LAYOUT_STREAM)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Rng(inner)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.0.random_range(0..n)
    }
}
