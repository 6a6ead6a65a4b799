//! Deterministic, splittable random streams.
//!
//! Every random decision in the generator is drawn from a stream keyed by
//! `(seed, node path)`, so the value a tree node sees is independent of
//! traversal order and of how sibling subtrees are processed. This is what
//! makes batch generation parallelizable without changing outputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MIX_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(MIX_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a ChaCha stream for `(seed, path)`.
///
/// The path is absorbed element-wise into a SplitMix64 chain, then expanded
/// into the 32-byte ChaCha key. Identical `(seed, path)` pairs always yield
/// identical streams, on every platform.
pub fn stream_for_path(seed: u64, path: &[u32]) -> ChaCha8Rng {
    let mut state = seed ^ 0x6a09_e667_f3bc_c908;
    let _ = splitmix64(&mut state);
    for &component in path {
        state ^= splitmix64(&mut ((component as u64).wrapping_mul(MIX_GAMMA) ^ state));
        let _ = splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw from `[lo, hi)`.
pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.random_range(lo..hi)
}

/// Uniform integer draw from `lo..=hi`.
pub fn uniform_int(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    if lo >= hi {
        return lo;
    }
    rng.random_range(lo..=hi)
}
