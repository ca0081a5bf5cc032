//! Per-trial random streams.
//!
//! Trial `i` of a run with master seed `s` draws from a ChaCha8 stream keyed
//! by `splitmix64(s ^ splitmix64(i))`, so every trial is a pure function of
//! `(s, i)` regardless of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// The splitmix64 finaliser: a bijective 64-bit mix.
#[inline]
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Identifies the random stream of one trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedRecord {
    pub master: u64,
    pub trial: u64,
}

impl SeedRecord {
    pub fn new(master: u64, trial: u64) -> Self {
        SeedRecord { master, trial }
    }

    pub fn stream_key(&self) -> u64 {
        splitmix64(self.master ^ splitmix64(self.trial))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.stream_key())
    }

    /// An independent sub-stream, e.g. for a second model in the same trial.
    pub fn substream(&self, tag: u64) -> SeedRecord {
        SeedRecord { master: splitmix64(self.master ^ tag.rotate_left(17)), trial: self.trial }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn known_values() {
        // reference outputs of the published splitmix64 generator seeded with 0
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_eq!(splitmix64(0x9e37_79b9_7f4a_7c15), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = SeedRecord::new(42, 3).rng().random_iter().take(4).collect();
        let b: Vec<u64> = SeedRecord::new(42, 3).rng().random_iter().take(4).collect();
        let c: Vec<u64> = SeedRecord::new(42, 4).rng().random_iter().take(4).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(SeedRecord::new(1, 0).stream_key(), SeedRecord::new(0, 1).stream_key());
    }
}
