use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 step, the standard 64-bit mixer.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Derives a child seed from (seed, stream, index). Streams separate
/// parties and purposes; the derivation is documented so other
/// implementations can replay runs: s = sm64(sm64(seed ^ sm64(stream)) ^ index).
pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ index)
}

/// Counter-based per-round generator: each (round, party) pair gets its own
/// ChaCha8 stream, so rounds are independent and replayable in any order.
pub fn round_rng(seed: u64, round: u64, party: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, party, round))
}
