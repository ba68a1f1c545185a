//! SplitMix64: the pinned pseudo-random generator for simulation and
//! fixture generation.
//!
//! The generator is Steele, Lea and Flood's SplitMix64: the state takes
//! fixed increment 0x9E3779B97F4A7C15 per draw and the output is a
//! two-round xor-shift-multiply finalizer of the state. It is tiny, has
//! a full 2^64 period, and makes every draw a pure function of the seed,
//! so results are identical across platforms and runs. Uniform doubles
//! take the top 53 bits, landing in [0, 1).

/// Deterministic 64-bit generator with SplitMix64 update and finalizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Generator seeded with exactly `seed`; equal seeds give equal
    /// streams forever.
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Next raw 64-bit draw.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in 0..bound via the widening-multiply reduction;
    /// deterministic and good enough for shuffles and column picks.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound >= 1, "bound must be positive");
        ((self.next_u64() as u128 * bound as u128) >> 64) as u64
    }
}
