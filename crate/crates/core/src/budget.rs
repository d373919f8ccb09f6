//! Enumeration budgets and the seeded generator used for sampled fallbacks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_ELEMENT_BUDGET: u64 = 1 << 20;
pub const DEFAULT_PAIR_BUDGET: u64 = 1 << 22;

/// Caps on exhaustive scans. Scans over single elements are bounded by
/// `elements`, scans over pairs by `pairs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Budgets {
    pub elements: u64,
    pub pairs: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            elements: DEFAULT_ELEMENT_BUDGET,
            pairs: DEFAULT_PAIR_BUDGET,
        }
    }
}

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream label (SplitMix64 finalizer), so that
/// independent checks draw from independent, reproducible streams.
pub fn derive_seed(seed: u64, stream: &[u8]) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for &b in stream {
        h = mix(h ^ b as u64);
    }
    mix(h)
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
