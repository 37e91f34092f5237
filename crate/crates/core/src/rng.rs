//! Seedable per-run random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used throughout the crate.
pub type WalkRng = ChaCha8Rng;

/// Independent stream `stream` under `seed`. Distinct streams of the same
/// seed never overlap.
pub fn stream_rng(seed: u64, stream: u64) -> WalkRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
