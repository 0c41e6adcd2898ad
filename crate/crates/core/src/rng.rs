//! Deterministic seed derivation.
//!
//! Everything stochastic in this workspace (weight initialization, batch
//! shuffling, measurement sampling, synthetic data) draws from a
//! [`rand_chacha::ChaCha8Rng`] seeded through this module, so a single
//! master seed pins every downstream random stream. Derivation is a
//! SplitMix64-style absorb/finalize hash: stable across platforms and
//! releases, and cheap enough to call per kernel entry.

/// One SplitMix64 scramble round.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a master seed with any number of context words (stage tags,
/// matrix indices, …) into a new independent seed.
///
/// The absorption is order-sensitive: `mix(s, &[1, 2])` and
/// `mix(s, &[2, 1])` differ, so `(i, j)` and `(j, i)` kernel entries get
/// distinct streams.
pub fn mix(master: u64, context: &[u64]) -> u64 {
    let mut acc = splitmix64(master);
    for &word in context {
        acc = splitmix64(acc ^ word.wrapping_mul(0xd6e8_feb8_6659_fd93));
    }
    acc
}
