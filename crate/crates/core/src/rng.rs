//! Counter-based keyed generator.
//!
//! Every output word is a pure function of `(seed, stream, counter)`, so any
//! word can be produced without touching its predecessors. Reference wires use
//! one stream each and one 64-bit word per block of 64 clock ticks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline(always)]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `counter`-th word of stream `stream` under `seed`.
#[inline(always)]
pub fn keyed_word(seed: u64, stream: u64, counter: u64) -> u64 {
    let key = mix64(seed ^ GOLDEN);
    let stream_key = mix64(key ^ mix64(stream.wrapping_add(GOLDEN)));
    mix64(stream_key ^ mix64(counter.wrapping_mul(GOLDEN).wrapping_add(key)))
}

/// A sequential generator for sample `index` of a seeded experiment.
///
/// Trials drawn this way are identical no matter which worker runs them.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(keyed_word(seed, u64::MAX, index))
}
