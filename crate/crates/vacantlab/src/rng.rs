//! Seeded, splittable random streams.
//!
//! Every operation that consumes randomness takes a plain `u64` seed and maps
//! it to a counter-based ChaCha stream keyed by `(seed, stream tag)`. A single
//! replica seed therefore yields independent streams for graph sampling,
//! walking, pairing extension and so on, and results are reproducible
//! regardless of worker scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Purpose tag selecting one of the independent substreams of a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Graph = 1,
    Walk = 2,
    Extend = 3,
    Pairs = 4,
    Resample = 5,
    Start = 6,
}

/// SplitMix64 finalizer; used to decorrelate nearby seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// The ChaCha stream for `(seed, stream)`.
pub fn rng_for(seed: u64, stream: Stream) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(splitmix64(seed));
    rng.set_stream(stream as u64);
    rng
}
