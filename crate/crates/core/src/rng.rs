//! Seeded, splittable random streams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by a
//! user seed and a stream id, so independent consumers (sampling, pair
//! selection, per-trial maps) never share a sequence.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream ids used inside the crate.
pub mod streams {
    pub const SAMPLING: u64 = 1;
    pub const GAUSSIAN_MAP: u64 = 2;
    pub const ORTHOGONAL_MAP: u64 = 3;
    pub const PAIRS: u64 = 4;
    pub const PROBES: u64 = 5;
    pub const TRIALS: u64 = 6;
}

pub fn stream(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives an independent child seed, e.g. one per experiment trial.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(streams::TRIALS);
    rng.set_word_pos(u128::from(index) * 2);
    rng.next_u64()
}
