//! Deterministic PRNG used for all sampling and retry decisions.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014). It is part of the
//! output contract: golden data produced with a given seed must reproduce on
//! any platform, so the algorithm is pinned here rather than taken from an
//! external crate whose streams may change between versions.
//!
//! Stream derivation: a child stream is seeded with the parent's next output
//! (`split`). Ranged draws use `lo + next_u64() % span`; the small modulo
//! bias is irrelevant for sampling and is likewise part of the contract.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Derives an independent child stream.
    pub fn split(&mut self) -> SplitMix64 {
        SplitMix64::new(self.next_u64())
    }

    /// Uniform draw from `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }
}
