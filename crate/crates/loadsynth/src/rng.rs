//! Deterministic RNG substreams.
//!
//! Every stochastic unit of work (a bus, a facility, a scenario bus day)
//! gets its own generator seeded from a stable 64-bit mix of the master
//! seed and the unit's id. Results are therefore independent of execution
//! order and thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; full-avalanche 64-bit mixer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable substream seed for unit `stream` under `master`.
pub fn substream_seed(master: u64, stream: u64) -> u64 {
    mix64(master ^ mix64(stream))
}

/// Generator for unit `stream` under `master`.
pub fn substream_rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(substream_seed(master, stream))
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in bytes {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Substream id for named sub-purposes (e.g. one stream per profile kind).
pub fn stream_id(tag: &str, index: u64) -> u64 {
    mix64(fnv64(tag.as_bytes())) ^ mix64(index)
}

/// Substream id keyed by a string identity rather than an index, so the
/// stream survives reordering of the underlying table.
pub fn stream_id_named(tag: &str, name: &str) -> u64 {
    mix64(fnv64(tag.as_bytes())) ^ mix64(fnv64(name.as_bytes()))
}
