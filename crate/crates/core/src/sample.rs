//! Seeded sampling with a fixed 64-bit linear congruential generator.
//!
//! `state' = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! output `state' >> 33`. `below(m)` returns `output mod m`. The seed is the
//! initial state. Any implementation following these three lines draws the
//! same samples.

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(Self::MULTIPLIER)
            .wrapping_add(Self::INCREMENT);
        (self.state >> 33) as u32
    }

    pub fn below(&mut self, m: u32) -> u32 {
        assert!(m > 0);
        self.next_u32() % m
    }

    /// `count` tuples of `width` indices, each in `0..m`.
    pub fn tuples(&mut self, count: usize, width: usize, m: u32) -> Vec<Vec<u32>> {
        (0..count)
            .map(|_| (0..width).map(|_| self.below(m)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // state after one step from 0 is the increment itself
        let mut g = Lcg::new(0);
        assert_eq!(g.next_u32(), (Lcg::INCREMENT >> 33) as u32);
        let a: Vec<_> = (0..5).map(|_| Lcg::new(42).below(100)).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }
}
